#include <gtest/gtest.h>

#include <random>

#include "ltss/oracle.hpp"
#include "ltss/tree_solver.hpp"
#include "test_util.hpp"

using namespace ltss;
using namespace ltss::tree;

namespace {

int position(const std::vector<Vertex>& order, Vertex v) {
  return static_cast<int>(std::find(order.begin(), order.end(), v) - order.begin());
}

struct Case {
  Graph graph;
  ThresholdMap thresholds;
  int lambda;
  std::vector<Vertex> targets;
};

Case random_case(std::mt19937_64& rng, int max_n, bool extended) {
  const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
  Graph g = fixtures::random_tree(n, rng);
  std::vector<int> t(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    const int hi = extended ? g.degree(v) + 2 : std::max(1, g.degree(v));
    t[v] = std::uniform_int_distribution<int>(extended ? 0 : 1, hi)(rng);
  }
  const int lambda = std::uniform_int_distribution<int>(extended ? 0 : 1, n)(rng);
  auto targets = fixtures::random_subset(n, 0.5, rng);
  return {std::move(g), ThresholdMap(std::move(t)), lambda, std::move(targets)};
}

}  // namespace

TEST(RootAndOrder, SingleVertex) {
  const auto rt = root_and_order(Graph(1), 0);
  EXPECT_EQ(rt.order, (std::vector<Vertex>{0}));
  EXPECT_TRUE(rt.children[0].empty());
  EXPECT_TRUE(rt.is_root(0));
}

TEST(RootAndOrder, P3FromMiddle) {
  const auto rt = root_and_order(make_path(3), 1);
  EXPECT_EQ(rt.order.back(), 1);
  EXPECT_EQ(rt.parent[0], 1);
  EXPECT_EQ(rt.parent[2], 1);
}

TEST(RootAndOrder, ChildrenBeforeParents) {
  std::mt19937_64 rng(1);
  const Graph g = fixtures::random_tree(1000, rng);
  const auto rt = root_and_order(g, 17);
  ASSERT_EQ(rt.order.size(), 1000u);
  for (Vertex v = 0; v < 1000; ++v) {
    if (rt.is_root(v)) continue;
    EXPECT_LT(position(rt.order, v), position(rt.order, rt.parent[v]));
  }
}

TEST(RootAndOrder, RejectsNonTrees) {
  EXPECT_THROW(root_and_order(Graph(2), 0), NotATreeError);
  const std::vector<Edge> tri{{0, 1}, {1, 2}, {0, 2}};
  EXPECT_THROW(root_and_order(Graph(3, tri), 0), NotATreeError);
  EXPECT_THROW(solve(Graph(3, tri), ThresholdMap::uniform(3, 1), 1, {}), NotATreeError);
}

TEST(Select, Examples) {
  const std::vector<int> one{5};
  const std::vector<int> three{3, 1, 2};
  EXPECT_EQ(select_tth_smallest(one, 1), 5);
  EXPECT_EQ(select_tth_smallest(three, 2), 2);
  EXPECT_THROW(select_tth_smallest(three, 0), std::out_of_range);
  EXPECT_THROW(select_tth_smallest(three, 4), std::out_of_range);
}

TEST(Select, MatchesSort) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    std::vector<int> v(static_cast<std::size_t>(1 + i % 20));
    for (int& x : v) x = std::uniform_int_distribution<int>(0, 6)(rng);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const int t = 1 + static_cast<int>(rng() % v.size());
    EXPECT_EQ(select_tth_smallest(v, t), sorted[t - 1]);
  }
}

TEST(Solve, NoTargets) {
  EXPECT_TRUE(solve(make_path(6), ThresholdMap::uniform(6, 1), 3, {}).seeds.empty());
}

TEST(Solve, MiddleOfP3) {
  const auto all = fixtures::all_vertices(3);
  const auto sol = solve(make_path(3), ThresholdMap({1, 2, 1}), 1, all);
  EXPECT_EQ(sol.seeds, (std::vector<Vertex>{1}));
  EXPECT_EQ(oracle::brute_min_target(make_path(3), ThresholdMap({1, 2, 1}), 1, all).size(), 1u);
}

TEST(Solve, StarCenterNeedsAllLeaves) {
  const std::vector<Vertex> center{0};
  const auto sol = solve(make_star(4), ThresholdMap({3, 1, 1, 1}), 2, center);
  EXPECT_EQ(sol.seeds.size(), 1u);
  EXPECT_EQ(oracle::brute_min_target(make_star(4), ThresholdMap({3, 1, 1, 1}), 2, center).size(), 1u);
}

TEST(Solve, PathSpreadsFromOneSeed) {
  const auto all = fixtures::all_vertices(7);
  EXPECT_EQ(solve(make_path(7), ThresholdMap::uniform(7, 1), 6, all).seeds.size(), 1u);
  EXPECT_EQ(solve(make_path(7), ThresholdMap::uniform(7, 1), 3, all).seeds.size(), 1u);
  EXPECT_EQ(solve(make_path(7), ThresholdMap::uniform(7, 1), 1, all).seeds.size(), 3u);
}

TEST(Solve, StrictModeRejectsExtendedInput) {
  SolveOptions strict;
  strict.extended_thresholds = false;
  EXPECT_THROW(solve(make_path(3), ThresholdMap({1, 3, 1}), 1, {}, strict), std::invalid_argument);
  EXPECT_THROW(solve(make_path(3), ThresholdMap({0, 1, 1}), 1, {}, strict), std::invalid_argument);
  EXPECT_THROW(solve(make_path(3), ThresholdMap({1, 1, 1}), 0, {}, strict), std::invalid_argument);
  EXPECT_NO_THROW(solve(make_path(3), ThresholdMap({1, 2, 1}), 1, {}, strict));
}

TEST(Solve, LambdaZeroSeedsTargets) {
  const std::vector<Vertex> a{0, 2};
  EXPECT_EQ(solve(make_path(3), ThresholdMap::uniform(3, 1), 0, a).seeds, a);
}

TEST(Solve, Forest) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {3, 4}};
  const Graph g(6, edges);
  const auto all = fixtures::all_vertices(6);
  const auto sol = solve(g, ThresholdMap({1, 1, 1, 1, 1, 1}), 2, all);
  EXPECT_EQ(sol.seeds.size(), 3u);
  EXPECT_EQ(sol.rooted.roots.size(), 3u);
}

TEST(Audit, P3) {
  const auto all = fixtures::all_vertices(3);
  SolveOptions opt;
  opt.root = 1;
  const auto sol = solve(make_path(3), ThresholdMap({1, 2, 1}), 1, all, opt);
  const auto a = audit(sol.rooted, make_path(3), ThresholdMap({1, 2, 1}), 1, all, sol.seeds);
  EXPECT_EQ(a[1].time_star, 0);
  EXPECT_EQ(a[0].time_star, NodeAudit::kInfinity);
  EXPECT_EQ(a[2].time_star, NodeAudit::kInfinity);
}

// Random-instance properties under the standing threshold assumption.

class TreeProperties : public ::testing::TestWithParam<int> {};

TEST_P(TreeProperties, OptimalFeasibleAudited) {
  std::mt19937_64 rng(500 + GetParam());
  for (int rep = 0; rep < 10; ++rep) {
    const Case c = random_case(rng, 10, false);
    const int n = c.graph.vertex_count();
    if (n == 1) continue;  // an isolated vertex violates 1 <= t <= d
    const auto sol = solve(c.graph, c.thresholds, c.lambda, c.targets);
    const auto best = oracle::brute_min_target(c.graph, c.thresholds, c.lambda, c.targets);
    EXPECT_EQ(sol.seeds.size(), best.size());

    const auto trace = simulate(c.graph, c.thresholds, sol.seeds, c.lambda);
    EXPECT_TRUE(fixtures::covers(trace, c.targets));
    for (Vertex v : sol.seeds) EXPECT_FALSE(sol.rooted.is_leaf(v));

    const auto a = audit(sol.rooted, c.graph, c.thresholds, c.lambda, c.targets, sol.seeds);
    for (Vertex v = 0; v < n; ++v) {
      EXPECT_EQ(sol.state[v].time, std::min(a[v].time_star, sol.time_infinity)) << "vertex " << v;
      EXPECT_EQ(sol.state[v].path, a[v].path_star) << "vertex " << v;
      EXPECT_GE(sol.state[v].path, -1);
      EXPECT_LT(sol.state[v].path, c.lambda);
    }

    for (Vertex v = 0; v < n; ++v) {
      if (!sol.state[v].required) continue;
      const int bound = std::min({c.lambda - sol.state[v].max_path, sol.state[v].time, c.lambda});
      EXPECT_TRUE(trace.is_active(v, bound)) << "vertex " << v;
    }

    for (Vertex root = 0; root < n; ++root) {
      SolveOptions opt;
      opt.root = root;
      EXPECT_EQ(solve(c.graph, c.thresholds, c.lambda, c.targets, opt).seeds.size(), best.size());
    }
  }
}

TEST_P(TreeProperties, ExtendedThresholdsMatchOracle) {
  std::mt19937_64 rng(900 + GetParam());
  for (int rep = 0; rep < 10; ++rep) {
    const Case c = random_case(rng, 9, true);
    const auto sol = solve(c.graph, c.thresholds, c.lambda, c.targets);
    const auto best = oracle::brute_min_target(c.graph, c.thresholds, c.lambda, c.targets);
    EXPECT_EQ(sol.seeds.size(), best.size());
    EXPECT_TRUE(fixtures::covers(simulate(c.graph, c.thresholds, sol.seeds, c.lambda), c.targets));
  }
}

TEST_P(TreeProperties, ForestsMatchOracle) {
  std::mt19937_64 rng(1300 + GetParam());
  for (int rep = 0; rep < 10; ++rep) {
    const int n = std::uniform_int_distribution<int>(2, 10)(rng);
    std::vector<Edge> edges;
    const Graph t = fixtures::random_tree(n, rng);
    for (const Edge& e : t.edges()) {
      if (rng() % 3 != 0) edges.push_back(e);
    }
    const Graph g(n, edges);
    std::vector<int> th(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) th[v] = std::uniform_int_distribution<int>(0, g.degree(v) + 1)(rng);
    const ThresholdMap tm(th);
    const int lambda = std::uniform_int_distribution<int>(0, n)(rng);
    const auto targets = fixtures::random_subset(n, 0.6, rng);
    const auto sol = solve(g, tm, lambda, targets);
    EXPECT_EQ(sol.seeds.size(), oracle::brute_min_target(g, tm, lambda, targets).size());
    EXPECT_TRUE(fixtures::covers(simulate(g, tm, sol.seeds, lambda), targets));
  }
}

INSTANTIATE_TEST_SUITE_P(Random, TreeProperties, ::testing::Range(0, 30));
