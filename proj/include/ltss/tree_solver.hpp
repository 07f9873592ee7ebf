#pragma once

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ltss/activation.hpp"
#include "ltss/graph.hpp"

namespace ltss::tree {

class NotATreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A forest with one root per component. For a tree, roots has one entry.
struct RootedTree {
  std::vector<Vertex> roots;
  std::vector<Vertex> parent;                 // -1 at roots
  std::vector<std::vector<Vertex>> children;  // C(v)
  std::vector<Vertex> order;                  // reverse BFS: children before parents

  bool is_leaf(Vertex v) const { return children[v].empty(); }
  bool is_root(Vertex v) const { return parent[v] == -1; }
};

// Throws NotATreeError unless `tree` is a tree and `root` one of its vertices.
RootedTree root_and_order(const Graph& tree, Vertex root);
// Any forest; `preferred_root` roots its own component, the smallest vertex
// roots every other component.
RootedTree root_forest(const Graph& forest, std::optional<Vertex> preferred_root = std::nullopt);

// t-th smallest element (1-based, with multiplicity); expected linear time.
// Throws std::out_of_range unless 1 <= t <= values.size().
int select_tth_smallest(std::span<const int> values, int t);

struct TreeNodeState {
  int time = 0;       // activation round using children only; > lambda means never
  int path = -1;      // -1, or length of the dependent path that needs v's parent
  int max_path = 0;   // 1 + max path over children; 0 at leaves
  int act_count = 0;  // children active strictly before lambda - max_path
  bool required = false;  // v ended up in A'
};

struct SolveOptions {
  std::optional<Vertex> root;
  // Accept thresholds outside [1, d(v)] (after capping at d(v)+1) and
  // isolated vertices. When false such inputs are rejected.
  bool extended_thresholds = true;
};

struct TreeSolution {
  std::vector<Vertex> seeds;  // sorted
  std::vector<TreeNodeState> state;
  RootedTree rooted;
  int lambda = 0;
  int time_infinity = 1;  // lambda + 1
};

// Minimum S with targets ⊆ Active[S, lambda] on a forest, in O(n).
// Throws NotATreeError for graphs with cycles, std::invalid_argument for
// λ < 0, bad targets, or (with extended thresholds off) thresholds outside
// [1, d(v)] or λ = 0.
TreeSolution solve(const Graph& forest, const ThresholdMap& thresholds, int lambda, std::span<const Vertex> targets,
                   const SolveOptions& options = {});

// Reference values computed from the activation process itself rather than
// from the solver's recurrences.
struct NodeAudit {
  static constexpr int kInfinity = std::numeric_limits<int>::max();
  int time_star = kInfinity;  // round v activates within T(v) seeded by S ∩ T(v)
  int path_star = -1;
  int max_path_star = 0;
};

std::vector<NodeAudit> audit(const RootedTree& rooted, const Graph& forest, const ThresholdMap& thresholds,
                             int lambda, std::span<const Vertex> targets, std::span<const Vertex> seeds);

}  // namespace ltss::tree
