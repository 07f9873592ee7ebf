#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ltss/graph.hpp"

namespace ltss {

// Per-vertex activation thresholds t(v) >= 0.
class ThresholdMap {
 public:
  ThresholdMap() = default;
  explicit ThresholdMap(std::vector<int> values);
  static ThresholdMap uniform(int n, int value) { return ThresholdMap(std::vector<int>(n, value)); }

  int operator[](Vertex v) const { return values_[v]; }
  int size() const { return static_cast<int>(values_.size()); }
  std::span<const int> values() const { return values_; }
  int max() const;

  friend bool operator==(const ThresholdMap&, const ThresholdMap&) = default;

 private:
  std::vector<int> values_;
};

// Caps every threshold at d(v)+1; a vertex above that cap can never be
// activated by neighbors, so the cap does not change any activation process.
ThresholdMap normalize_thresholds(const Graph& graph, const ThresholdMap& thresholds);
bool is_normalized(const Graph& graph, const ThresholdMap& thresholds);

// Cumulative sets Active[S,0] ⊆ ... ⊆ Active[S,λ]. Stored as the round in
// which each vertex joins; set views are materialized on request.
class ActivationTrace {
 public:
  static constexpr int kNever = -1;

  ActivationTrace(int lambda, std::vector<int> activation_round);

  int lambda() const { return lambda_; }
  int vertex_count() const { return static_cast<int>(round_.size()); }
  // Round in which v joins, or kNever if it is still inactive after round λ.
  int activation_round(Vertex v) const { return round_[v]; }
  bool is_active(Vertex v, int round) const { return round_[v] != kNever && round_[v] <= round; }

  std::vector<Vertex> active_at(int round) const;     // sorted
  std::vector<Vertex> activated_at(int round) const;  // S[i] \ S[i-1], sorted
  int size_at(int round) const;
  std::vector<std::vector<Vertex>> rounds() const;

  friend bool operator==(const ActivationTrace&, const ActivationTrace&) = default;

 private:
  int lambda_;
  std::vector<int> round_;
};

// Runs the threshold process from `seed` for `lambda` rounds. Throws
// std::out_of_range for unknown seed vertices.
ActivationTrace simulate(const Graph& graph, const ThresholdMap& thresholds,
                         std::span<const Vertex> seed, int lambda);

// Rounds until no further vertex activates (at most n).
ActivationTrace simulate_to_fixpoint(const Graph& graph, const ThresholdMap& thresholds,
                                     std::span<const Vertex> seed);

enum class Variant {
  kBudgetRequirement,  // (λ,β,α): |S| ≤ β and |Active[S,λ]| ≥ α
  kBudgetTargets,      // (λ,β,A): |S| ≤ β and A ⊆ Active[S,λ]
  kTargets,            // (λ,A):   A ⊆ Active[S,λ], |S| minimum
};

std::string_view variant_name(Variant v);  // "lba", "lbA", "lA"
std::optional<Variant> parse_variant(std::string_view name);

struct Instance {
  Graph graph;
  ThresholdMap thresholds;
  int lambda = 0;
  std::optional<int> budget;
  std::optional<int> requirement;
  std::optional<std::vector<Vertex>> targets;
};

// Throws std::invalid_argument if the instance is malformed (threshold count,
// negative values, λ < 0, out-of-range β/α, unknown or repeated targets).
void validate(const Instance& instance);

// Throws std::invalid_argument when a field needed by `variant` is missing.
void require_fields(const Instance& instance, Variant variant);

bool verify_solution(const Instance& instance, Variant variant, std::span<const Vertex> seed);

}  // namespace ltss
