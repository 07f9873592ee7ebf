#include "ltss/cwd_solver.hpp"

#include <algorithm>
#include <string>

namespace ltss::cwd {

using kexpr::NodeId;
using kexpr::NodeKind;

namespace {

void require_same_shape(const AlphaMatrix& alpha, const RMatrix& r) {
  if (alpha.lambda() != r.lambda() || alpha.labels() != r.labels()) {
    throw std::invalid_argument("alpha is " + std::to_string(alpha.rows()) + "x" + std::to_string(alpha.labels()) +
                                " but r is " + std::to_string(r.rows()) + "x" + std::to_string(r.labels()));
  }
}

// Visits every matrix m of the given shape with 0 <= m(i,l) <= cap(i,l) and
// lo[l] <= column_sum(l) <= hi[l], in lexicographic order of the row-major
// entries. Stops when `fn` returns true; returns whether it stopped.
bool enumerate_matrices(const AlphaMatrix& cap, std::span<const int> lo, std::span<const int> hi,
                        const std::function<bool(const AlphaMatrix&)>& fn) {
  const int lambda = cap.lambda();
  const int labels = cap.labels();
  for (int l = 1; l <= labels; ++l) {
    if (lo[l - 1] > hi[l - 1] || lo[l - 1] > cap.column_sum(l)) return false;
  }
  // remaining[i][l]: capacity of column l strictly below row i.
  std::vector<std::vector<int>> remaining(static_cast<std::size_t>(lambda) + 2, std::vector<int>(labels, 0));
  for (int i = lambda; i >= 0; --i) {
    for (int l = 1; l <= labels; ++l) remaining[i][l - 1] = remaining[i + 1][l - 1] + cap(i, l);
  }
  AlphaMatrix current(lambda, labels);
  std::vector<int> partial(static_cast<std::size_t>(labels), 0);
  const int total_entries = (lambda + 1) * labels;

  std::function<bool(int)> step = [&](int position) -> bool {
    if (position == total_entries) return fn(current);
    const int i = position / labels;
    const int l = position % labels + 1;
    const int below = remaining[i + 1][l - 1];
    const int low = std::max(0, lo[l - 1] - partial[l - 1] - below);
    const int high = std::min(cap(i, l), hi[l - 1] - partial[l - 1]);
    for (int v = low; v <= high; ++v) {
      current(i, l) = v;
      partial[l - 1] += v;
      const bool stop = step(position + 1);
      partial[l - 1] -= v;
      if (stop) {
        current(i, l) = 0;
        return true;
      }
    }
    current(i, l) = 0;
    return false;
  };
  return step(0);
}

}  // namespace

// ---------------------------------------------------------------------------

bool verify_ar_process(const kexpr::LabeledGraph& h, const ThresholdMap& thresholds, const AlphaMatrix& alpha,
                       const RMatrix& r, std::span<const std::vector<Vertex>> process) {
  if (process.empty()) throw std::invalid_argument("process needs at least S[0]");
  const int lambda = static_cast<int>(process.size()) - 1;
  require_same_shape(alpha, r);
  if (alpha.lambda() != lambda) {
    throw std::invalid_argument("matrices cover " + std::to_string(alpha.lambda()) + " rounds but the process has " +
                                std::to_string(lambda));
  }
  const int n = h.graph.vertex_count();
  const int labels = alpha.labels();
  for (int l : h.label) {
    if (l > labels) throw std::invalid_argument("graph uses label " + std::to_string(l) + " beyond the matrix width");
  }

  std::vector<int> round(static_cast<std::size_t>(n), ActivationTrace::kNever);
  for (int i = 0; i <= lambda; ++i) {
    std::vector<char> present(static_cast<std::size_t>(n), 0);
    for (Vertex v : process[i]) {
      if (v < 0 || v >= n || h.label[v] == 0) return false;  // outside V(H)
      present[v] = 1;
      if (round[v] == ActivationTrace::kNever) round[v] = i;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (round[v] != ActivationTrace::kNever && round[v] < i && !present[v]) return false;  // not monotone
    }
  }

  // (2) and (3): exact per-round, per-label counts.
  AlphaMatrix counted(lambda, labels);
  for (Vertex v = 0; v < n; ++v) {
    if (round[v] != ActivationTrace::kNever) ++counted(round[v], h.label[v]);
  }
  if (counted != alpha) return false;

  // (1): the vertices joining in round i are exactly those meeting their
  // reduced thresholds against S[i-1].
  for (int i = 1; i <= lambda; ++i) {
    for (Vertex u = 0; u < n; ++u) {
      if (h.label[u] == 0) continue;
      if (round[u] != ActivationTrace::kNever && round[u] < i) continue;
      int active = 0;
      for (Vertex w : h.graph.neighbors(u)) {
        if (round[w] != ActivationTrace::kNever && round[w] < i) ++active;
      }
      const bool qualifies = active >= thresholds[u] - r(i, h.label[u]);
      if (qualifies != (round[u] == i)) return false;
    }
  }
  return true;
}

bool gamma_leaf(int label, int threshold, const AlphaMatrix& alpha, const RMatrix& r) {
  require_same_shape(alpha, r);
  if (label < 1 || label > alpha.labels()) throw std::invalid_argument("leaf label outside the matrix width");
  for (int l = 1; l <= alpha.labels(); ++l) {
    if (l != label && alpha.column_sum(l) != 0) return false;
  }
  const int activations = alpha.column_sum(label);
  if (activations > 1) return false;
  if (activations == 0) {
    for (int i = 1; i <= r.lambda(); ++i) {
      if (r(i, label) >= threshold) return false;
    }
    return true;
  }
  int chosen = 0;
  while (alpha(chosen, label) == 0) ++chosen;
  if (chosen == 0) return true;
  for (int i = 1; i <= r.lambda(); ++i) {
    if (r(i, label) >= threshold) return i == chosen;
  }
  return false;
}

RMatrix eta_reduce(const RMatrix& r, const AlphaMatrix& alpha, int a, int b, int cap) {
  require_same_shape(alpha, r);
  RMatrix out = r;
  int before_a = 0;  // sum_{j<i} alpha[j,a]
  int before_b = 0;
  for (int i = 1; i <= r.lambda(); ++i) {
    before_a += alpha(i - 1, a);
    before_b += alpha(i - 1, b);
    out(i, a) = std::min(cap, r(i, a) + before_b);
    out(i, b) = std::min(cap, r(i, b) + before_a);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t GammaTable::KeyHash::operator()(const std::vector<int>& key) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int v : key) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<int> GammaTable::key(const AlphaMatrix& alpha, const RMatrix& r) const {
  std::vector<int> k(alpha.data().begin(), alpha.data().end());
  k.insert(k.end(), r.data().begin(), r.data().end());
  return k;
}

const GammaEntry* GammaTable::find(const AlphaMatrix& alpha, const RMatrix& r) const {
  const auto it = entries_.find(key(alpha, r));
  return it == entries_.end() ? nullptr : &it->second;
}

const GammaEntry& GammaTable::insert(const AlphaMatrix& alpha, const RMatrix& r, GammaEntry entry) {
  return entries_.insert_or_assign(key(alpha, r), std::move(entry)).first->second;
}

void GammaTable::for_each(
    const std::function<void(const AlphaMatrix&, const RMatrix&, const GammaEntry&)>& fn) const {
  const std::size_t alpha_size = static_cast<std::size_t>(AlphaMatrix::rows_for(lambda_) * labels_);
  for (const auto& [k, entry] : entries_) {
    const std::span<const int> all(k);
    fn(AlphaMatrix(lambda_, labels_, all.first(alpha_size)), RMatrix(lambda_, labels_, all.subspan(alpha_size)),
       entry);
  }
}

// ---------------------------------------------------------------------------

GammaSolver::GammaSolver(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda, int labels)
    : expr_(e), lambda_(lambda), labels_(labels > 0 ? labels : e.max_label()) {
  if (lambda < 0) throw std::invalid_argument("negative latency bound");
  if (e.max_label() > labels_) throw std::invalid_argument("expression uses more labels than declared");
  const auto violations = kexpr::check_irredundant(e);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw IrredundancyError("eta(" + std::to_string(v.a) + "," + std::to_string(v.b) + ") at node " +
                            std::to_string(v.node) + " re-adds edge " + std::to_string(v.edge.first) + "-" +
                            std::to_string(v.edge.second));
  }
  graph_ = kexpr::evaluate(e);
  if (thresholds.size() != graph_.graph.vertex_count()) {
    throw std::invalid_argument("expected " + std::to_string(graph_.graph.vertex_count()) + " thresholds");
  }
  thresholds_ = normalize_thresholds(graph_.graph, thresholds);
  r_cap_ = thresholds_.max();

  counts_.resize(static_cast<std::size_t>(e.size()));
  tables_.reserve(static_cast<std::size_t>(e.size()));
  for (NodeId id = 0; id < e.size(); ++id) {
    const auto& node = e.node(id);
    auto& c = counts_[id];
    switch (node.kind) {
      case NodeKind::kLeaf:
        c.assign(static_cast<std::size_t>(labels_), 0);
        c[node.a - 1] = 1;
        break;
      case NodeKind::kUnion:
        c = counts_[node.left];
        for (int l = 0; l < labels_; ++l) c[l] += counts_[node.right][l];
        break;
      case NodeKind::kEta:
        c = counts_[node.left];
        break;
      case NodeKind::kRho:
        c = counts_[node.left];
        c[node.b - 1] += c[node.a - 1];
        c[node.a - 1] = 0;
        break;
    }
    tables_.emplace_back(lambda_, labels_);
  }
}

std::size_t GammaSolver::memo_size() const {
  std::size_t total = 0;
  for (const auto& t : tables_) total += t.size();
  return total;
}

bool GammaSolver::within_bounds(NodeId node, const AlphaMatrix& alpha) const {
  for (int l = 1; l <= labels_; ++l) {
    if (alpha.column_sum(l) > counts_[node][l - 1]) return false;
  }
  return true;
}

RMatrix GammaSolver::clamp(const RMatrix& r) const {
  RMatrix out = r;
  for (int i = 1; i <= lambda_; ++i) {
    for (int l = 1; l <= labels_; ++l) out(i, l) = std::min(out(i, l), r_cap_);
  }
  return out;
}

bool GammaSolver::query(NodeId node, const AlphaMatrix& alpha, const RMatrix& r) {
  require_same_shape(alpha, r);
  if (alpha.lambda() != lambda_ || alpha.labels() != labels_) {
    throw std::invalid_argument("query shape does not match the solver's (lambda, k)");
  }
  if (!within_bounds(node, alpha)) return false;
  const RMatrix clamped = clamp(r);
  if (const GammaEntry* hit = tables_[node].find(alpha, clamped)) return hit->satisfiable;
  GammaEntry entry = compute(node, alpha, clamped);
  return tables_[node].insert(alpha, clamped, std::move(entry)).satisfiable;
}

GammaEntry GammaSolver::compute(NodeId node, const AlphaMatrix& alpha, const RMatrix& r) {
  const auto& n = expr_.node(node);
  GammaEntry entry;
  switch (n.kind) {
    case NodeKind::kLeaf: {
      entry.kind = GammaEntry::Case::kLeaf;
      const Vertex u = expr_.vertex_ids()[expr_.leaf_begin(node)];
      entry.satisfiable = gamma_leaf(n.a, thresholds_[u], alpha, r);
      for (int i = 0; i <= lambda_; ++i) {
        if (alpha(i, n.a) == 1) entry.leaf_round = i;
      }
      break;
    }
    case NodeKind::kUnion: {
      entry.kind = GammaEntry::Case::kUnion;
      const auto& left = counts_[n.left];
      const auto& right = counts_[n.right];
      std::vector<int> lo(static_cast<std::size_t>(labels_));
      std::vector<int> hi(static_cast<std::size_t>(labels_));
      for (int l = 1; l <= labels_; ++l) {
        const int column = alpha.column_sum(l);
        lo[l - 1] = std::max(0, column - right[l - 1]);
        hi[l - 1] = std::min(column, left[l - 1]);
      }
      enumerate_matrices(alpha, lo, hi, [&](const AlphaMatrix& part) {
        if (!query(n.left, part, r)) return false;
        AlphaMatrix rest = alpha;
        for (int i = 0; i <= lambda_; ++i) {
          for (int l = 1; l <= labels_; ++l) rest(i, l) -= part(i, l);
        }
        if (!query(n.right, rest, r)) return false;
        entry.satisfiable = true;
        entry.first = part;
        entry.second = std::move(rest);
        return true;
      });
      break;
    }
    case NodeKind::kEta: {
      entry.kind = GammaEntry::Case::kEta;
      entry.child_r = eta_reduce(r, alpha, n.a, n.b, r_cap_);
      entry.satisfiable = query(n.left, alpha, entry.child_r);
      break;
    }
    case NodeKind::kRho: {
      entry.kind = GammaEntry::Case::kRho;
      if (alpha.column_sum(n.a) != 0) break;  // label a is empty after renaming
      RMatrix child_r = r;
      for (int i = 1; i <= lambda_; ++i) child_r(i, n.a) = r(i, n.b);
      // Split column b of alpha between child labels a and b.
      AlphaMatrix cap(lambda_, labels_);
      std::vector<int> lo(static_cast<std::size_t>(labels_), 0);
      std::vector<int> hi(static_cast<std::size_t>(labels_), 0);
      for (int i = 0; i <= lambda_; ++i) cap(i, n.a) = alpha(i, n.b);
      const int column = alpha.column_sum(n.b);
      const auto& child = counts_[n.left];
      lo[n.a - 1] = std::max(0, column - child[n.b - 1]);
      hi[n.a - 1] = std::min(column, child[n.a - 1]);
      enumerate_matrices(cap, lo, hi, [&](const AlphaMatrix& moved) {
        AlphaMatrix child_alpha = alpha;
        for (int i = 0; i <= lambda_; ++i) {
          child_alpha(i, n.a) = moved(i, n.a);
          child_alpha(i, n.b) = alpha(i, n.b) - moved(i, n.a);
        }
        if (!query(n.left, child_alpha, child_r)) return false;
        entry.satisfiable = true;
        entry.first = std::move(child_alpha);
        return true;
      });
      entry.child_r = std::move(child_r);
      break;
    }
  }
  return entry;
}

std::vector<int> GammaSolver::reconstruct(NodeId node, const AlphaMatrix& alpha, const RMatrix& r) {
  std::vector<int> rounds(static_cast<std::size_t>(vertex_count()), ActivationTrace::kNever);
  reconstruct_into(node, alpha, r, rounds);
  return rounds;
}

void GammaSolver::reconstruct_into(NodeId node, const AlphaMatrix& alpha, const RMatrix& r,
                                   std::vector<int>& rounds) {
  if (!query(node, alpha, r)) throw std::logic_error("no (alpha, r)-activation process exists at this node");
  const GammaEntry& entry = *tables_[node].find(alpha, clamp(r));
  const auto& n = expr_.node(node);
  switch (entry.kind) {
    case GammaEntry::Case::kLeaf:
      rounds[expr_.vertex_ids()[expr_.leaf_begin(node)]] = entry.leaf_round;
      break;
    case GammaEntry::Case::kUnion: {
      // Copies: recursion may rehash the child tables but not this one.
      const AlphaMatrix first = entry.first;
      const AlphaMatrix second = entry.second;
      const RMatrix same_r = clamp(r);
      reconstruct_into(n.left, first, same_r, rounds);
      reconstruct_into(n.right, second, same_r, rounds);
      break;
    }
    case GammaEntry::Case::kEta: {
      const RMatrix child_r = entry.child_r;
      reconstruct_into(n.left, alpha, child_r, rounds);
      break;
    }
    case GammaEntry::Case::kRho: {
      const AlphaMatrix child_alpha = entry.first;
      const RMatrix child_r = entry.child_r;
      reconstruct_into(n.left, child_alpha, child_r, rounds);
      break;
    }
  }
}

void GammaSolver::for_each_root_solution(const std::function<bool(const AlphaMatrix&)>& fn,
                                         std::span<const int> exact_labels) {
  const NodeId root = expr_.root();
  const auto& counts = counts_[root];
  AlphaMatrix cap(lambda_, labels_);
  for (int i = 0; i <= lambda_; ++i) {
    for (int l = 1; l <= labels_; ++l) cap(i, l) = counts[l - 1];
  }
  std::vector<int> lo(static_cast<std::size_t>(labels_), 0);
  std::vector<int> hi(counts.begin(), counts.end());
  for (int l : exact_labels) {
    if (l < 1 || l > labels_) throw std::invalid_argument("exact label out of range");
    lo[l - 1] = counts[l - 1];
  }
  const RMatrix zero(lambda_, labels_);
  enumerate_matrices(cap, lo, hi, [&](const AlphaMatrix& alpha) {
    if (!query(root, alpha, zero)) return false;
    return !fn(alpha);
  });
}

// ---------------------------------------------------------------------------

namespace {

RootProfile make_profile(const AlphaMatrix& alpha) {
  return RootProfile{alpha, alpha.row_sum(0), alpha.total()};
}

std::vector<Vertex> seeds_of(const std::vector<int>& rounds) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(rounds.size()); ++v) {
    if (rounds[v] == 0) out.push_back(v);
  }
  return out;
}

}  // namespace

RequirementSolver::RequirementSolver(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda)
    : gamma_(e, thresholds, lambda) {
  gamma_.for_each_root_solution([&](const AlphaMatrix& alpha) {
    profiles_.push_back(make_profile(alpha));
    return true;
  });
}

const RootProfile* RequirementSolver::first_match(int budget, int requirement) const {
  for (const auto& p : profiles_) {
    if (p.seeds <= budget && p.total >= requirement) return &p;
  }
  return nullptr;
}

bool RequirementSolver::decide(int budget, int requirement) const { return first_match(budget, requirement) != nullptr; }

std::optional<std::vector<Vertex>> RequirementSolver::select(int budget, int requirement) {
  const RootProfile* p = first_match(budget, requirement);
  if (p == nullptr) return std::nullopt;
  const AlphaMatrix alpha = p->alpha;
  return seeds_of(gamma_.reconstruct(gamma_.expression().root(), alpha, RMatrix(gamma_.lambda(), gamma_.labels())));
}

TargetSolver::TargetSolver(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda,
                           std::span<const Vertex> targets)
    : base_labels_(e.max_label()),
      gamma_(kexpr::lift_for_targets(e, targets, e.max_label()), thresholds, lambda, 2 * e.max_label()) {
  std::vector<int> marked;
  for (int l = base_labels_ + 1; l <= 2 * base_labels_; ++l) marked.push_back(l);
  gamma_.for_each_root_solution(
      [&](const AlphaMatrix& alpha) {
        profiles_.push_back(make_profile(alpha));
        return true;
      },
      marked);
}

bool TargetSolver::decide(int budget) const {
  return std::any_of(profiles_.begin(), profiles_.end(), [&](const RootProfile& p) { return p.seeds <= budget; });
}

std::optional<int> TargetSolver::minimum_budget() const {
  std::optional<int> best;
  for (const auto& p : profiles_) {
    if (!best || p.seeds < *best) best = p.seeds;
  }
  return best;
}

std::optional<std::vector<Vertex>> TargetSolver::select(int budget) {
  for (const auto& p : profiles_) {
    if (p.seeds <= budget) {
      const AlphaMatrix alpha = p.alpha;
      return seeds_of(
          gamma_.reconstruct(gamma_.expression().root(), alpha, RMatrix(gamma_.lambda(), gamma_.labels())));
    }
  }
  return std::nullopt;
}

bool decide(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda, int budget, int requirement) {
  return RequirementSolver(e, thresholds, lambda).decide(budget, requirement);
}

std::optional<std::vector<Vertex>> select(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda,
                                          int budget, int requirement) {
  return RequirementSolver(e, thresholds, lambda).select(budget, requirement);
}

bool decide_targets(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda, int budget,
                    std::span<const Vertex> targets) {
  return TargetSolver(e, thresholds, lambda, targets).decide(budget);
}

std::optional<std::vector<Vertex>> select_targets(const kexpr::KExpr& e, const ThresholdMap& thresholds, int lambda,
                                                  int budget, std::span<const Vertex> targets) {
  return TargetSolver(e, thresholds, lambda, targets).select(budget);
}

}  // namespace ltss::cwd
