#include <gtest/gtest.h>

#include <map>
#include <random>

#include "ltss/cwd_solver.hpp"
#include "ltss/oracle.hpp"
#include "test_util.hpp"

using namespace ltss;
using namespace ltss::cwd;
using kexpr::parse;

namespace {

constexpr const char* kP2 = "eta(2,1, U(2(v), 1(u)))";  // v = 0, u = 1

AlphaMatrix alpha_of(int lambda, int labels, std::initializer_list<std::tuple<int, int, int>> entries) {
  AlphaMatrix a(lambda, labels);
  for (auto [i, l, v] : entries) a(i, l) = v;
  return a;
}

std::vector<std::vector<Vertex>> process_of(const std::vector<int>& rounds, int lambda) {
  std::vector<std::vector<Vertex>> s(static_cast<std::size_t>(lambda + 1));
  for (Vertex v = 0; v < static_cast<Vertex>(rounds.size()); ++v) {
    if (rounds[v] == ActivationTrace::kNever) continue;
    for (int i = rounds[v]; i <= lambda; ++i) s[i].push_back(v);
  }
  return s;
}

// Every satisfiable stored entry reconstructs to an accepted process.
int check_witnesses(GammaSolver& g) {
  int checked = 0;
  for (kexpr::NodeId node = 0; node < g.expression().size(); ++node) {
    const auto h = kexpr::evaluate_subexpression(g.expression(), node);
    g.table(node).for_each([&](const AlphaMatrix& alpha, const RMatrix& r, const GammaEntry& entry) {
      if (!entry.satisfiable) return;
      const auto rounds = g.reconstruct(node, alpha, r);
      EXPECT_TRUE(verify_ar_process(h, g.thresholds(), alpha, r, process_of(rounds, g.lambda())));
      ++checked;
    });
  }
  return checked;
}

}  // namespace

TEST(Matrix, Indexing) {
  AlphaMatrix a(2, 3);
  a(0, 1) = 1;
  a(2, 3) = 2;
  EXPECT_EQ(a.rows(), 3);
  EXPECT_EQ(a.column_sum(3), 2);
  EXPECT_EQ(a.row_sum(0), 1);
  EXPECT_EQ(a.total(), 3);
  RMatrix r(2, 3);
  EXPECT_EQ(r.rows(), 2);
  EXPECT_TRUE(r.is_zero());
}

TEST(VerifyProcess, SeededVertex) {
  const auto h = kexpr::evaluate(parse("1(u)"));
  const ThresholdMap t({1});
  const auto alpha = alpha_of(2, 1, {{0, 1, 1}});
  RMatrix r(2, 1);
  r(1, 1) = 3;
  EXPECT_TRUE(verify_ar_process(h, t, alpha, r, std::vector<std::vector<Vertex>>{{0}, {0}, {0}}));
}

TEST(VerifyProcess, NeverActive) {
  const auto h = kexpr::evaluate(parse("1(u)"));
  EXPECT_TRUE(verify_ar_process(h, ThresholdMap({1}), AlphaMatrix(2, 1), RMatrix(2, 1),
                                std::vector<std::vector<Vertex>>{{}, {}, {}}));
}

TEST(VerifyProcess, UnsupportedActivation) {
  const auto h = kexpr::evaluate(parse("1(u)"));
  EXPECT_FALSE(verify_ar_process(h, ThresholdMap({1}), alpha_of(1, 1, {{1, 1, 1}}), RMatrix(1, 1),
                                 std::vector<std::vector<Vertex>>{{}, {0}}));
}

TEST(VerifyProcess, Errors) {
  const auto h = kexpr::evaluate(parse("1(u)"));
  EXPECT_THROW(verify_ar_process(h, ThresholdMap({1}), AlphaMatrix(1, 1), RMatrix(2, 1),
                                 std::vector<std::vector<Vertex>>{{}, {}}),
               std::invalid_argument);
  EXPECT_THROW(verify_ar_process(h, ThresholdMap({1}), AlphaMatrix(1, 1), RMatrix(1, 1),
                                 std::vector<std::vector<Vertex>>{{}}),
               std::invalid_argument);
}

TEST(GammaLeaf, Cases) {
  RMatrix r(1, 1);
  EXPECT_TRUE(gamma_leaf(1, 1, alpha_of(1, 1, {{0, 1, 1}}), r));
  EXPECT_TRUE(gamma_leaf(1, 1, AlphaMatrix(1, 1), r));
  EXPECT_FALSE(gamma_leaf(1, 1, alpha_of(1, 1, {{1, 1, 1}}), r));
  r(1, 1) = 1;
  EXPECT_TRUE(gamma_leaf(1, 1, alpha_of(1, 1, {{1, 1, 1}}), r));
  EXPECT_FALSE(gamma_leaf(1, 1, AlphaMatrix(1, 1), r));
}

TEST(GammaLeaf, FirstRoundReachingThreshold) {
  RMatrix r(3, 2);
  r(2, 1) = 2;
  r(3, 1) = 2;
  EXPECT_TRUE(gamma_leaf(1, 2, alpha_of(3, 2, {{2, 1, 1}}), r));
  EXPECT_FALSE(gamma_leaf(1, 2, alpha_of(3, 2, {{3, 1, 1}}), r));
  EXPECT_FALSE(gamma_leaf(1, 2, alpha_of(3, 2, {{0, 2, 1}}), r));
  EXPECT_FALSE(gamma_leaf(1, 2, alpha_of(3, 2, {{0, 1, 1}, {2, 1, 1}}), r));
}

TEST(GammaLeaf, ZeroThresholdActivatesInRoundOne) {
  const RMatrix r(2, 1);
  EXPECT_FALSE(gamma_leaf(1, 0, AlphaMatrix(2, 1), r));
  EXPECT_TRUE(gamma_leaf(1, 0, alpha_of(2, 1, {{1, 1, 1}}), r));
}

TEST(EtaReduce, AddsEarlierOppositeActivations) {
  const auto alpha = alpha_of(2, 3, {{0, 1, 1}, {1, 1, 1}, {0, 2, 2}, {0, 3, 1}});
  RMatrix r(2, 3);
  r(1, 3) = 1;
  const RMatrix out = eta_reduce(r, alpha, 1, 2, 5);
  EXPECT_EQ(out(1, 2), 1);
  EXPECT_EQ(out(2, 2), 2);
  EXPECT_EQ(out(1, 1), 2);
  EXPECT_EQ(out(2, 1), 2);
  EXPECT_EQ(out(1, 3), 1);
  EXPECT_EQ(eta_reduce(r, alpha, 1, 2, 1)(2, 2), 1);
}

TEST(GammaUnion, TwoIsolatedVertices) {
  GammaSolver g(parse("U(1(a), 1(b))"), ThresholdMap({1, 1}), 1);
  EXPECT_TRUE(g.query_root(alpha_of(1, 1, {{0, 1, 2}})));
  EXPECT_FALSE(g.query_root(alpha_of(1, 1, {{0, 1, 1}, {1, 1, 1}})));
  EXPECT_TRUE(g.query_root(AlphaMatrix(1, 1)));
  const GammaEntry* e = g.table(g.expression().root()).find(alpha_of(1, 1, {{0, 1, 2}}), RMatrix(1, 1));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->kind, GammaEntry::Case::kUnion);
  EXPECT_EQ(e->first(0, 1), 1);
  EXPECT_EQ(e->second(0, 1), 1);
}

TEST(GammaEta, SingleEdge) {
  GammaSolver g(parse(kP2), ThresholdMap({1, 1}), 1);
  const auto alpha = alpha_of(1, 2, {{0, 1, 1}, {1, 2, 1}});
  const RMatrix zero(1, 2);
  ASSERT_TRUE(g.query_root(alpha));
  const GammaEntry* e = g.table(g.expression().root()).find(alpha, zero);
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->child_r(1, 2), 1);
  EXPECT_EQ(e->child_r(1, 1), 0);
  const auto rounds = g.reconstruct(g.expression().root(), alpha, zero);
  EXPECT_EQ(rounds, (std::vector<int>{1, 0}));
  EXPECT_TRUE(verify_ar_process(g.graph(), g.thresholds(), alpha, zero, process_of(rounds, 1)));

  const kexpr::NodeId child = g.expression().node(g.expression().root()).left;
  EXPECT_EQ(g.query_root(AlphaMatrix(1, 2)), g.query(child, AlphaMatrix(1, 2), zero));
  EXPECT_FALSE(g.query_root(alpha_of(1, 2, {{1, 2, 1}})));
}

TEST(GammaRho, RenamedLabelMustBeEmpty) {
  GammaSolver g(parse("rho(2->1, U(1(u), 2(v)))"), ThresholdMap({1, 1}), 0);
  EXPECT_TRUE(g.query_root(alpha_of(0, 2, {{0, 1, 2}})));
  EXPECT_FALSE(g.query_root(alpha_of(0, 2, {{0, 2, 1}})));
  const GammaEntry* e = g.table(g.expression().root()).find(alpha_of(0, 2, {{0, 1, 2}}), RMatrix(0, 2));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->first(0, 1), 1);
  EXPECT_EQ(e->first(0, 2), 1);
}

TEST(GammaRho, ChildWithoutSourceLabel) {
  GammaSolver g(parse("rho(3->1, eta(1,2, U(1(u), 2(v))))"), ThresholdMap({1, 1}), 1, 3);
  const auto alpha = alpha_of(1, 3, {{0, 1, 1}, {1, 2, 1}});
  EXPECT_TRUE(g.query_root(alpha));
  const kexpr::NodeId child = g.expression().node(g.expression().root()).left;
  EXPECT_TRUE(g.query(child, alpha, RMatrix(1, 3)));
}

TEST(Solver, RejectsRedundantExpression) {
  EXPECT_THROW(GammaSolver(parse("eta(2,1, eta(2,1, U(2(v), 1(u))))"), ThresholdMap({1, 1}), 1), IrredundancyError);
}

TEST(Decide, BudgetCoversRequirement) {
  const auto e = parse(fixtures::kNamedP5);
  RequirementSolver s(e, ThresholdMap::uniform(5, 2), 1);
  for (int a = 0; a <= 5; ++a) {
    EXPECT_TRUE(s.decide(a, a));
    const auto sel = s.select(a, a);
    ASSERT_TRUE(sel.has_value());
    EXPECT_LE(static_cast<int>(sel->size()), a);
  }
}

TEST(Decide, SingleEdge) {
  const auto e = parse(kP2);
  EXPECT_FALSE(decide(e, ThresholdMap({1, 1}), 0, 1, 2));
  EXPECT_FALSE(select(e, ThresholdMap({1, 1}), 0, 1, 2).has_value());
  EXPECT_TRUE(decide(e, ThresholdMap({1, 1}), 1, 1, 2));
  const auto s = select(e, ThresholdMap({1, 1}), 1, 1, 2);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->size(), 1u);
  Instance inst{kexpr::evaluate(e).graph, ThresholdMap({1, 1}), 1, 1, 2, std::nullopt};
  EXPECT_TRUE(verify_solution(inst, Variant::kBudgetRequirement, *s));
}

TEST(DecideTargets, Trivial) {
  const auto e = parse(fixtures::kNamedP5);
  const auto t = ThresholdMap::uniform(5, 2);
  for (int beta = 0; beta <= 5; ++beta) {
    const auto s = select_targets(e, t, 1, beta, {});
    ASSERT_TRUE(s.has_value());
    EXPECT_TRUE(s->empty());
  }
  const std::vector<Vertex> a{0, 3};
  EXPECT_TRUE(decide_targets(e, t, 1, 2, a));
}

TEST(DecideTargets, MiddleOfP3) {
  const auto e = kexpr::tree_expression(make_path(3), 0);
  const ThresholdMap t({1, 2, 1});
  const auto all = fixtures::all_vertices(3);
  EXPECT_TRUE(decide_targets(e, t, 1, 1, all));
  EXPECT_EQ(select_targets(e, t, 1, 1, all), (std::vector<Vertex>{1}));
  EXPECT_FALSE(decide_targets(e, t, 1, 0, all));
  TargetSolver solver(e, t, 1, all);
  EXPECT_EQ(solver.minimum_budget(), 1);
}

TEST(Witness, RandomExpressions) {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    kexpr::KExpr e = kexpr::random_expression({1 + trial % 5, 3, 0.6, 0.3}, rng);
    try {
      e = kexpr::normalize_irredundant(e);
    } catch (const kexpr::PartialRedundancyError&) {
      continue;
    }
    const auto h = kexpr::evaluate(e);
    std::vector<int> t;
    for (Vertex v = 0; v < h.graph.vertex_count(); ++v) {
      t.push_back(std::uniform_int_distribution<int>(0, h.graph.degree(v) + 1)(rng));
    }
    GammaSolver g(e, ThresholdMap(t), 1 + trial % 2);
    g.for_each_root_solution([](const AlphaMatrix&) { return true; });
    checked += check_witnesses(g);
  }
  EXPECT_GT(checked, 0);
}

TEST(Symmetry, UnionOperandOrder) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const Graph t1 = fixtures::random_tree(n, rng);
    const Graph t2 = fixtures::random_tree(n, rng);
    // Rename the second tree's leaves to n..2n-1.
    const auto left = kexpr::tree_expression(t1, 0);
    std::string right_text = kexpr::format(kexpr::tree_expression(t2, 0));
    for (int v = n - 1; v >= 0; --v) {
      const std::string from = "(" + std::to_string(v) + ")";
      const std::string to = "(x" + std::to_string(v) + ")";
      for (std::size_t p = right_text.find(from); p != std::string::npos; p = right_text.find(from, p + to.size())) {
        right_text.replace(p, from.size(), to);
      }
    }
    const auto right = parse(right_text);
    const auto ab = kexpr::KExpr::unite(left, right);
    const auto ba = kexpr::KExpr::unite(right, left);
    // Both evaluate with text-order ids; align thresholds by name.
    const auto hab = kexpr::evaluate(ab);
    const auto hba = kexpr::evaluate(ba);
    std::vector<int> tab(static_cast<std::size_t>(2 * n));
    std::vector<int> tba(static_cast<std::size_t>(2 * n));
    std::map<std::string, int> by_name;
    for (Vertex v = 0; v < 2 * n; ++v) {
      tab[v] = std::uniform_int_distribution<int>(1, std::max(1, hab.graph.degree(v)))(rng);
      by_name[hab.names[v]] = tab[v];
    }
    for (Vertex v = 0; v < 2 * n; ++v) tba[v] = by_name[hba.names[v]];
    const int lambda = 1 + trial % 2;
    GammaSolver gab(ab, ThresholdMap(tab), lambda, 3);
    GammaSolver gba(ba, ThresholdMap(tba), lambda, 3);
    std::vector<std::vector<int>> sab;
    std::vector<std::vector<int>> sba;
    gab.for_each_root_solution([&](const AlphaMatrix& a) {
      sab.emplace_back(a.data().begin(), a.data().end());
      return true;
    });
    gba.for_each_root_solution([&](const AlphaMatrix& a) {
      sba.emplace_back(a.data().begin(), a.data().end());
      return true;
    });
    EXPECT_EQ(sab, sba);
    EXPECT_FALSE(sab.empty());
  }
}

TEST(Oracle, SmallTrees) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 5;
    const Graph g = fixtures::random_tree(n, rng);
    const auto t = fixtures::random_degree_thresholds(g, rng);
    const int lambda = 1 + trial % 2;
    RequirementSolver s(kexpr::tree_expression(g, 0), t, lambda);
    for (int beta = 0; beta <= n; ++beta) {
      for (int req = 0; req <= n; ++req) {
        EXPECT_EQ(s.decide(beta, req), oracle::brute_decision(g, t, lambda, beta, req).feasible);
      }
    }
  }
}
