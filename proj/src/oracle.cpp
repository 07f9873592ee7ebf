#include "ltss/oracle.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <string>

namespace ltss::oracle {

namespace {

using Mask = std::uint32_t;

class BitProcess {
 public:
  BitProcess(const Graph& graph, const ThresholdMap& thresholds, const Limits& limits)
      : n_(graph.vertex_count()), thresholds_(thresholds) {
    if (n_ > limits.max_vertices || n_ > 30) {
      throw LimitExceeded("brute force refused: " + std::to_string(n_) + " vertices exceeds limit " +
                          std::to_string(std::min(limits.max_vertices, 30)));
    }
    if (thresholds.size() != n_) throw std::invalid_argument("threshold count differs from vertex count");
    neighbors_.assign(static_cast<std::size_t>(n_), 0);
    for (auto [u, v] : graph.edges()) {
      neighbors_[u] |= Mask{1} << v;
      neighbors_[v] |= Mask{1} << u;
    }
  }

  int n() const { return n_; }

  // Active set after `rounds` rounds; rounds < 0 runs to the fixpoint.
  Mask run(Mask active, int rounds) const {
    for (int i = 0; rounds < 0 || i < rounds; ++i) {
      Mask next = active;
      for (int u = 0; u < n_; ++u) {
        if ((active >> u) & 1U) continue;
        if (std::popcount(neighbors_[u] & active) >= thresholds_[u]) next |= Mask{1} << u;
      }
      if (next == active) break;
      active = next;
    }
    return active;
  }

 private:
  int n_;
  const ThresholdMap& thresholds_;
  std::vector<Mask> neighbors_;
};

// Visits the size-k subsets of {0..n-1} in lexicographic order until `fn`
// returns true.
bool for_each_subset(int n, int k, const std::function<bool(Mask)>& fn) {
  if (k > n) return false;
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    Mask m = 0;
    for (int v : pick) m |= Mask{1} << v;
    if (fn(m)) return true;
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) return false;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::vector<Vertex> to_vertices(Mask m) {
  std::vector<Vertex> out;
  for (Vertex v = 0; m != 0; ++v, m >>= 1) {
    if (m & 1U) out.push_back(v);
  }
  return out;
}

Mask to_mask(std::span<const Vertex> vs, int n) {
  Mask m = 0;
  for (Vertex v : vs) {
    if (v < 0 || v >= n) throw std::invalid_argument("target " + std::to_string(v) + " out of range");
    m |= Mask{1} << v;
  }
  return m;
}

std::optional<std::vector<Vertex>> min_target(const BitProcess& process, int rounds, Mask required, int max_size) {
  std::optional<std::vector<Vertex>> found;
  for (int k = 0; k <= std::min(max_size, process.n()) && !found; ++k) {
    for_each_subset(process.n(), k, [&](Mask seed) {
      if ((process.run(seed, rounds) & required) != required) return false;
      found = to_vertices(seed);
      return true;
    });
  }
  return found;
}

}  // namespace

std::vector<Vertex> brute_min_target(const Graph& graph, const ThresholdMap& thresholds, int lambda,
                                     std::span<const Vertex> targets, const Limits& limits) {
  if (lambda < 0) throw std::invalid_argument("negative latency bound");
  const BitProcess process(graph, thresholds, limits);
  return *min_target(process, lambda, to_mask(targets, process.n()), process.n());
}

std::vector<Vertex> brute_min_target_unbounded(const Graph& graph, const ThresholdMap& thresholds,
                                               std::span<const Vertex> targets, const Limits& limits) {
  const BitProcess process(graph, thresholds, limits);
  return *min_target(process, -1, to_mask(targets, process.n()), process.n());
}

Decision brute_decision(const Graph& graph, const ThresholdMap& thresholds, int lambda, int budget, int requirement,
                        const Limits& limits) {
  if (lambda < 0) throw std::invalid_argument("negative latency bound");
  const BitProcess process(graph, thresholds, limits);
  Decision out;
  for (int k = 0; k <= std::min(budget, process.n()) && !out.feasible; ++k) {
    for_each_subset(process.n(), k, [&](Mask seed) {
      if (std::popcount(process.run(seed, lambda)) < requirement) return false;
      out.feasible = true;
      out.witness = to_vertices(seed);
      return true;
    });
  }
  return out;
}

std::optional<std::vector<Vertex>> brute_select_targets(const Graph& graph, const ThresholdMap& thresholds, int lambda,
                                                        int budget, std::span<const Vertex> targets,
                                                        const Limits& limits) {
  if (lambda < 0) throw std::invalid_argument("negative latency bound");
  const BitProcess process(graph, thresholds, limits);
  return min_target(process, lambda, to_mask(targets, process.n()), budget);
}

}  // namespace ltss::oracle
