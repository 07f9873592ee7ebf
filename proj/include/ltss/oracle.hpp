#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ltss/activation.hpp"
#include "ltss/graph.hpp"

namespace ltss::oracle {

// Exhaustive solvers over all seed sets, smallest first. Within a size the
// lexicographically smallest feasible set is returned. They use their own
// bitmask simulation, independent of ltss::simulate.

struct Limits {
  int max_vertices = 20;
};

class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Vertex> brute_min_target(const Graph& graph, const ThresholdMap& thresholds, int lambda,
                                     std::span<const Vertex> targets, const Limits& limits = {});

// Same search without a latency bound: the process runs to its fixpoint.
std::vector<Vertex> brute_min_target_unbounded(const Graph& graph, const ThresholdMap& thresholds,
                                               std::span<const Vertex> targets, const Limits& limits = {});

struct Decision {
  bool feasible = false;
  std::vector<Vertex> witness;
};

// Exists S with |S| <= budget and |Active[S,λ]| >= requirement?
Decision brute_decision(const Graph& graph, const ThresholdMap& thresholds, int lambda, int budget, int requirement,
                        const Limits& limits = {});

// Minimum S with targets ⊆ Active[S,λ], if it fits the budget.
std::optional<std::vector<Vertex>> brute_select_targets(const Graph& graph, const ThresholdMap& thresholds, int lambda,
                                                        int budget, std::span<const Vertex> targets,
                                                        const Limits& limits = {});

}  // namespace ltss::oracle
