#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ltss/activation.hpp"
#include "ltss/graph.hpp"
#include "ltss/kexpr.hpp"

namespace ltss::fixtures {

// Uniform random labeled tree via a Pruefer sequence.
inline Graph random_tree(int n, std::mt19937_64& rng) {
  if (n <= 1) return Graph(n);
  if (n == 2) {
    const Edge e{0, 1};
    return Graph(2, std::span<const Edge>(&e, 1));
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> code(static_cast<std::size_t>(n - 2));
  for (int& c : code) c = pick(rng);
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int c : code) ++degree[c];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.insert(v);
  }
  std::vector<Edge> edges;
  for (int c : code) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, c);
    if (--degree[c] == 1) leaves.insert(c);
  }
  const int u = *leaves.begin();
  const int v = *std::next(leaves.begin());
  edges.emplace_back(u, v);
  return Graph(n, edges);
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

// Thresholds uniform in [1, d(v)]; isolated vertices get 1.
inline ThresholdMap random_degree_thresholds(const Graph& g, std::mt19937_64& rng) {
  std::vector<int> t(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    t[v] = std::uniform_int_distribution<int>(1, std::max(1, g.degree(v)))(rng);
  }
  return ThresholdMap(std::move(t));
}

inline std::vector<Vertex> random_subset(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (coin(rng)) out.push_back(v);
  }
  return out;
}

inline std::vector<Vertex> all_vertices(int n) {
  std::vector<Vertex> out(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) out[v] = v;
  return out;
}

inline bool covers(const ActivationTrace& trace, std::span<const Vertex> targets) {
  return std::all_of(targets.begin(), targets.end(), [&](Vertex v) { return trace.is_active(v, trace.lambda()); });
}

// Edge set of an evaluated expression as sorted name pairs.
inline std::set<std::pair<std::string, std::string>> named_edges(const kexpr::LabeledGraph& h) {
  std::set<std::pair<std::string, std::string>> out;
  for (auto [u, v] : h.graph.edges()) out.insert(std::minmax(h.names[u], h.names[v]));
  return out;
}

inline constexpr const char* kNamedP5 =
    "eta(3,2, U(3(z), rho(3->2, rho(2->1, eta(3,2, U(3(y), rho(3->2, rho(2->1, eta(3,2, U(3(x), "
    "eta(2,1, U(2(v), 1(u)))))))))))))";

}  // namespace ltss::fixtures
