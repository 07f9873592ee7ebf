#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ltss {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Undirected simple graph over dense vertex ids 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Throws std::invalid_argument on self-loops, duplicates or out-of-range ids.
  Graph(int n, std::span<const Edge> edges);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  bool has_vertex(Vertex v) const { return v >= 0 && v < vertex_count(); }
  bool has_edge(Vertex u, Vertex v) const;

  // Each edge once, as (min, max), sorted.
  std::vector<Edge> edges() const;

  // True iff connected and |E| = n-1. The empty graph is not a tree.
  bool is_tree() const;
  bool is_forest() const;
  // Component index per vertex; components numbered by smallest member.
  std::vector<int> components() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges() == b.edges();
  }

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

// Builders for small families used by tests, generators and benchmarks.
Graph make_path(int n);
Graph make_star(int n);  // vertex 0 is the center
Graph make_tree_from_parents(std::span<const Vertex> parent);  // parent[0] ignored

}  // namespace ltss
