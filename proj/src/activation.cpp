#include "ltss/activation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ltss {

ThresholdMap::ThresholdMap(std::vector<int> values) : values_(std::move(values)) {
  for (int t : values_) {
    if (t < 0) throw std::invalid_argument("negative threshold");
  }
}

int ThresholdMap::max() const {
  return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

ThresholdMap normalize_thresholds(const Graph& graph, const ThresholdMap& thresholds) {
  std::vector<int> capped(thresholds.values().begin(), thresholds.values().end());
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    capped[v] = std::min(capped[v], graph.degree(v) + 1);
  }
  return ThresholdMap(std::move(capped));
}

bool is_normalized(const Graph& graph, const ThresholdMap& thresholds) {
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    if (thresholds[v] > graph.degree(v) + 1) return false;
  }
  return true;
}

ActivationTrace::ActivationTrace(int lambda, std::vector<int> activation_round)
    : lambda_(lambda), round_(std::move(activation_round)) {}

std::vector<Vertex> ActivationTrace::active_at(int round) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    if (is_active(v, round)) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> ActivationTrace::activated_at(int round) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    if (round_[v] == round) out.push_back(v);
  }
  return out;
}

int ActivationTrace::size_at(int round) const {
  return static_cast<int>(std::count_if(round_.begin(), round_.end(), [round](int r) {
    return r != kNever && r <= round;
  }));
}

std::vector<std::vector<Vertex>> ActivationTrace::rounds() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(static_cast<std::size_t>(lambda_) + 1);
  for (int i = 0; i <= lambda_; ++i) out.push_back(active_at(i));
  return out;
}

namespace {

// Returns activation rounds; stops early once a round adds nothing. With
// `lambda` < 0 it runs to the fixpoint and reports the number of rounds used.
std::vector<int> run_process(const Graph& graph, const ThresholdMap& thresholds,
                             std::span<const Vertex> seed, int lambda, int* rounds_used) {
  const int n = graph.vertex_count();
  if (thresholds.size() != n) throw std::invalid_argument("threshold count differs from vertex count");
  std::vector<int> round(static_cast<std::size_t>(n), ActivationTrace::kNever);
  for (Vertex s : seed) {
    if (!graph.has_vertex(s)) throw std::out_of_range("seed vertex " + std::to_string(s) + " out of range");
    round[s] = 0;
  }
  std::vector<int> active_neighbors(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> frontier;
  for (Vertex v = 0; v < n; ++v) {
    if (round[v] == 0) frontier.push_back(v);
  }
  for (Vertex s : frontier) {
    for (Vertex w : graph.neighbors(s)) ++active_neighbors[w];
  }

  std::vector<Vertex> next;
  std::vector<char> queued(static_cast<std::size_t>(n), 0);
  int i = 1;
  for (; lambda < 0 || i <= lambda; ++i) {
    next.clear();
    if (i == 1) {
      // Round one also covers zero-threshold vertices with no active neighbor.
      for (Vertex u = 0; u < n; ++u) {
        if (round[u] == ActivationTrace::kNever && active_neighbors[u] >= thresholds[u]) next.push_back(u);
      }
    } else {
      for (Vertex s : frontier) {
        for (Vertex u : graph.neighbors(s)) {
          if (round[u] == ActivationTrace::kNever && !queued[u] && active_neighbors[u] >= thresholds[u]) {
            queued[u] = 1;
            next.push_back(u);
          }
        }
      }
    }
    if (next.empty()) break;
    for (Vertex u : next) {
      round[u] = i;
      queued[u] = 0;
    }
    for (Vertex u : next) {
      for (Vertex w : graph.neighbors(u)) ++active_neighbors[w];
    }
    frontier.swap(next);
  }
  if (rounds_used != nullptr) *rounds_used = i - 1;
  return round;
}

}  // namespace

ActivationTrace simulate(const Graph& graph, const ThresholdMap& thresholds, std::span<const Vertex> seed,
                         int lambda) {
  if (lambda < 0) throw std::invalid_argument("negative latency bound");
  return ActivationTrace(lambda, run_process(graph, thresholds, seed, lambda, nullptr));
}

ActivationTrace simulate_to_fixpoint(const Graph& graph, const ThresholdMap& thresholds,
                                     std::span<const Vertex> seed) {
  int used = 0;
  auto round = run_process(graph, thresholds, seed, -1, &used);
  return ActivationTrace(used, std::move(round));
}

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kBudgetRequirement:
      return "lba";
    case Variant::kBudgetTargets:
      return "lbA";
    case Variant::kTargets:
      return "lA";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "lba") return Variant::kBudgetRequirement;
  if (name == "lbA") return Variant::kBudgetTargets;
  if (name == "lA") return Variant::kTargets;
  return std::nullopt;
}

void validate(const Instance& instance) {
  const int n = instance.graph.vertex_count();
  if (instance.thresholds.size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " thresholds, got " +
                                std::to_string(instance.thresholds.size()));
  }
  if (instance.lambda < 0) throw std::invalid_argument("lambda must be non-negative");
  if (instance.budget && (*instance.budget < 0 || *instance.budget > n)) {
    throw std::invalid_argument("budget must lie in [0, n]");
  }
  if (instance.requirement && (*instance.requirement < 0 || *instance.requirement > n)) {
    throw std::invalid_argument("alpha must lie in [0, n]");
  }
  if (instance.targets) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Vertex v : *instance.targets) {
      if (!instance.graph.has_vertex(v)) throw std::invalid_argument("target " + std::to_string(v) + " out of range");
      if (seen[v]) throw std::invalid_argument("target " + std::to_string(v) + " listed twice");
      seen[v] = 1;
    }
  }
}

void require_fields(const Instance& instance, Variant variant) {
  const auto missing = [&](const char* field) {
    throw std::invalid_argument(std::string("variant ") + std::string(variant_name(variant)) + " needs field '" +
                                field + "'");
  };
  switch (variant) {
    case Variant::kBudgetRequirement:
      if (!instance.budget) missing("budget");
      if (!instance.requirement) missing("alpha");
      break;
    case Variant::kBudgetTargets:
      if (!instance.budget) missing("budget");
      if (!instance.targets) missing("targets");
      break;
    case Variant::kTargets:
      if (!instance.targets) missing("targets");
      break;
  }
}

bool verify_solution(const Instance& instance, Variant variant, std::span<const Vertex> seed) {
  require_fields(instance, variant);
  const auto trace = simulate(instance.graph, instance.thresholds, seed, instance.lambda);
  const auto seed_size = static_cast<int>(seed.size());
  const auto covers_targets = [&] {
    return std::all_of(instance.targets->begin(), instance.targets->end(),
                       [&](Vertex v) { return trace.is_active(v, instance.lambda); });
  };
  switch (variant) {
    case Variant::kBudgetRequirement:
      return seed_size <= *instance.budget && trace.size_at(instance.lambda) >= *instance.requirement;
    case Variant::kBudgetTargets:
      return seed_size <= *instance.budget && covers_targets();
    case Variant::kTargets:
      return covers_targets();
  }
  return false;
}

}  // namespace ltss
