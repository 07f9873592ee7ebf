#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ltss/activation.hpp"
#include "ltss/kexpr.hpp"

namespace ltss::cwd {

// Round-by-label matrix of non-negative counts. Rows are rounds
// FirstRound..lambda, columns are labels 1..k.
template <int FirstRound>
class RoundLabelMatrix {
 public:
  RoundLabelMatrix() = default;
  RoundLabelMatrix(int lambda, int labels)
      : lambda_(lambda), labels_(labels), data_(static_cast<std::size_t>(rows_for(lambda) * labels), 0) {}
  RoundLabelMatrix(int lambda, int labels, std::span<const int> data) : RoundLabelMatrix(lambda, labels) {
    if (data.size() != data_.size()) throw std::invalid_argument("matrix data has the wrong size");
    data_.assign(data.begin(), data.end());
  }

  static constexpr int rows_for(int lambda) { return lambda - FirstRound + 1; }

  int lambda() const { return lambda_; }
  int labels() const { return labels_; }
  int rows() const { return rows_for(lambda_); }

  int operator()(int round, int label) const { return data_[index(round, label)]; }
  int& operator()(int round, int label) { return data_[index(round, label)]; }

  int column_sum(int label) const {
    int s = 0;
    for (int i = FirstRound; i <= lambda_; ++i) s += (*this)(i, label);
    return s;
  }
  int row_sum(int round) const {
    int s = 0;
    for (int l = 1; l <= labels_; ++l) s += (*this)(round, l);
    return s;
  }
  int total() const {
    int s = 0;
    for (int v : data_) s += v;
    return s;
  }
  bool is_zero() const {
    for (int v : data_) {
      if (v != 0) return false;
    }
    return true;
  }

  std::span<const int> data() const { return data_; }

  friend bool operator==(const RoundLabelMatrix&, const RoundLabelMatrix&) = default;

 private:
  std::size_t index(int round, int label) const {
    return static_cast<std::size_t>((round - FirstRound) * labels_ + (label - 1));
  }

  int lambda_ = 0;
  int labels_ = 0;
  std::vector<int> data_;
};

// alpha[i,l]: vertices with label l seeded (i = 0) or activated in round i.
using AlphaMatrix = RoundLabelMatrix<0>;
// r[i,l]: threshold reduction applied in round i >= 1 to label-l vertices.
using RMatrix = RoundLabelMatrix<1>;

class IrredundancyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks the three defining conditions of an (alpha, r)-activation process
// on the labeled graph `h` (vertices with label 0 are outside h). `process`
// holds S[0..lambda]. Throws std::invalid_argument when the matrix
// dimensions disagree with the process length or with each other.
bool verify_ar_process(const kexpr::LabeledGraph& h, const ThresholdMap& thresholds, const AlphaMatrix& alpha,
                       const RMatrix& r, std::span<const std::vector<Vertex>> process);

// Leaf case: whether vertex u with label a and threshold t admits an
// (alpha, r)-activation process on its own.
bool gamma_leaf(int label, int threshold, const AlphaMatrix& alpha, const RMatrix& r);

// Threshold reduction under eta(a,b): rows of labels a and b absorb the
// number of opposite-label vertices active before each round, clamped at
// `cap`; other rows are copied.
RMatrix eta_reduce(const RMatrix& r, const AlphaMatrix& alpha, int a, int b, int cap);

// Per-node provenance of a satisfiable query, enough to rebuild a process.
struct GammaEntry {
  enum class Case { kLeaf, kUnion, kEta, kRho };
  bool satisfiable = false;
  Case kind = Case::kLeaf;
  int leaf_round = ActivationTrace::kNever;  // kLeaf
  AlphaMatrix first;   // kUnion: left part; kRho: child alpha
  AlphaMatrix second;  // kUnion: right part
  RMatrix child_r;     // kEta / kRho: the child's r
};

// Memoized gamma values of one clique-width tree node. Missing keys have not
// been queried.
class GammaTable {
 public:
  GammaTable(int lambda, int labels) : lambda_(lambda), labels_(labels) {}

  const GammaEntry* find(const AlphaMatrix& alpha, const RMatrix& r) const;
  const GammaEntry& insert(const AlphaMatrix& alpha, const RMatrix& r, GammaEntry entry);
  std::size_t size() const { return entries_.size(); }

  void for_each(const std::function<void(const AlphaMatrix&, const RMatrix&, const GammaEntry&)>& fn) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<int>& key) const noexcept;
  };
  std::vector<int> key(const AlphaMatrix& alpha, const RMatrix& r) const;

  int lambda_;
  int labels_;
  std::unordered_map<std::vector<int>, GammaEntry, KeyHash> entries_;
};

// Top-down memoized evaluation of gamma over the clique-width tree of an
// irredundant expression. Queries whose alpha exceeds the label class sizes
// at a node return false without recursion; r entries are clamped at the
// largest threshold.
class GammaSolver {
 public:
  // `thresholds` is indexed by vertex id of the evaluated expression. `labels`
  // defaults to the expression's largest label. Throws IrredundancyError if
  // some eta re-adds an existing edge.
  GammaSolver(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda, int labels = 0);

  const kexpr::KExpr& expression() const { return expr_; }
  const kexpr::LabeledGraph& graph() const { return graph_; }
  const ThresholdMap& thresholds() const { return thresholds_; }
  int lambda() const { return lambda_; }
  int labels() const { return labels_; }
  int r_cap() const { return r_cap_; }
  int vertex_count() const { return expr_.leaf_count(); }
  // |V_l(H)| at a node, index l-1.
  std::span<const int> label_counts(kexpr::NodeId node) const { return counts_[node]; }

  bool query(kexpr::NodeId node, const AlphaMatrix& alpha, const RMatrix& r);
  bool query_root(const AlphaMatrix& alpha) { return query(expr_.root(), alpha, RMatrix(lambda_, labels_)); }

  // Activation round per vertex id (kNever outside the process) of an
  // (alpha, r)-activation process for the node's subgraph. Throws
  // std::logic_error if gamma is 0 there.
  std::vector<int> reconstruct(kexpr::NodeId node, const AlphaMatrix& alpha, const RMatrix& r);

  const GammaTable& table(kexpr::NodeId node) const { return tables_[node]; }
  std::size_t memo_size() const;

  // Calls `fn` for every alpha at the root (lexicographic over the row-major
  // entries) with column sums within the root's label counts and gamma(alpha,
  // 0) = 1. Columns listed in `exact` must sum to the full class size. Stops
  // early when `fn` returns false.
  void for_each_root_solution(const std::function<bool(const AlphaMatrix&)>& fn,
                              std::span<const int> exact_labels = {});

 private:
  bool within_bounds(kexpr::NodeId node, const AlphaMatrix& alpha) const;
  RMatrix clamp(const RMatrix& r) const;
  GammaEntry compute(kexpr::NodeId node, const AlphaMatrix& alpha, const RMatrix& r);
  void reconstruct_into(kexpr::NodeId node, const AlphaMatrix& alpha, const RMatrix& r, std::vector<int>& rounds);

  kexpr::KExpr expr_;
  kexpr::LabeledGraph graph_;
  ThresholdMap thresholds_;
  int lambda_;
  int labels_;
  int r_cap_;
  std::vector<std::vector<int>> counts_;
  std::vector<GammaTable> tables_;
};

// Satisfiable root profile: seeds = sum of row 0, total = sum of all entries.
struct RootProfile {
  AlphaMatrix alpha;
  int seeds = 0;
  int total = 0;
};

// (λ,β,α) decision and selection. The root profiles are computed once, so
// many (β, α) queries on one instance are cheap.
class RequirementSolver {
 public:
  RequirementSolver(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda);

  bool decide(int budget, int requirement) const;
  std::optional<std::vector<Vertex>> select(int budget, int requirement);
  std::span<const RootProfile> profiles() const { return profiles_; }
  GammaSolver& gamma() { return gamma_; }

 private:
  const RootProfile* first_match(int budget, int requirement) const;

  GammaSolver gamma_;
  std::vector<RootProfile> profiles_;
};

// (λ,β,A) decision and selection on the lifted 2k-label expression.
class TargetSolver {
 public:
  TargetSolver(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda, std::span<const Vertex> targets);

  bool decide(int budget) const;
  std::optional<std::vector<Vertex>> select(int budget);
  // Smallest budget for which decide() holds, if any.
  std::optional<int> minimum_budget() const;
  GammaSolver& gamma() { return gamma_; }

 private:
  int base_labels_;
  GammaSolver gamma_;
  std::vector<RootProfile> profiles_;
};

bool decide(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda, int budget, int requirement);
std::optional<std::vector<Vertex>> select(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda,
                                          int budget, int requirement);
bool decide_targets(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda, int budget,
                    std::span<const Vertex> targets);
std::optional<std::vector<Vertex>> select_targets(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda,
                                                  int budget, std::span<const Vertex> targets);

}  // namespace ltss::cwd
