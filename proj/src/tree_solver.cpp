#include "ltss/tree_solver.hpp"

#include <algorithm>
#include <string>

namespace ltss::tree {

RootedTree root_forest(const Graph& forest, std::optional<Vertex> preferred_root) {
  if (!forest.is_forest()) throw NotATreeError("graph contains a cycle");
  const int n = forest.vertex_count();
  if (preferred_root && !forest.has_vertex(*preferred_root)) {
    throw std::invalid_argument("root " + std::to_string(*preferred_root) + " out of range");
  }
  RootedTree t;
  t.parent.assign(static_cast<std::size_t>(n), -1);
  t.children.assign(static_cast<std::size_t>(n), {});
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> bfs;
  bfs.reserve(static_cast<std::size_t>(n));

  const auto grow = [&](Vertex root) {
    t.roots.push_back(root);
    seen[root] = 1;
    std::size_t head = bfs.size();
    bfs.push_back(root);
    for (; head < bfs.size(); ++head) {
      const Vertex u = bfs[head];
      for (Vertex w : forest.neighbors(u)) {
        if (seen[w]) continue;
        seen[w] = 1;
        t.parent[w] = u;
        t.children[u].push_back(w);
        bfs.push_back(w);
      }
    }
  };
  if (preferred_root) grow(*preferred_root);
  for (Vertex v = 0; v < n; ++v) {
    if (!seen[v]) grow(v);
  }
  t.order.assign(bfs.rbegin(), bfs.rend());
  return t;
}

RootedTree root_and_order(const Graph& tree, Vertex root) {
  if (!tree.is_tree()) throw NotATreeError("graph is not a tree");
  return root_forest(tree, root);
}

int select_tth_smallest(std::span<const int> values, int t) {
  if (t < 1 || t > static_cast<int>(values.size())) {
    throw std::out_of_range("rank " + std::to_string(t) + " outside [1, " + std::to_string(values.size()) + "]");
  }
  std::vector<int> scratch(values.begin(), values.end());
  auto nth = scratch.begin() + (t - 1);
  std::nth_element(scratch.begin(), nth, scratch.end());
  return *nth;
}

namespace {

void check_targets(int n, std::span<const Vertex> targets) {
  for (Vertex v : targets) {
    if (v < 0 || v >= n) throw std::invalid_argument("target " + std::to_string(v) + " out of range");
  }
}

}  // namespace

TreeSolution solve(const Graph& forest, const ThresholdMap& thresholds, int lambda, std::span<const Vertex> targets,
                   const SolveOptions& options) {
  const int n = forest.vertex_count();
  if (thresholds.size() != n) throw std::invalid_argument("threshold count differs from vertex count");
  if (lambda < 0) throw std::invalid_argument("negative latency bound");
  check_targets(n, targets);

  TreeSolution out;
  out.rooted = root_forest(forest, options.root);
  out.lambda = lambda;
  out.time_infinity = lambda + 1;
  out.state.assign(static_cast<std::size_t>(n), {});

  if (!options.extended_thresholds) {
    if (lambda < 1) throw std::invalid_argument("latency bound must be at least 1");
    for (Vertex v = 0; v < n; ++v) {
      if (thresholds[v] < 1 || thresholds[v] > forest.degree(v)) {
        throw std::invalid_argument("threshold of vertex " + std::to_string(v) + " outside [1, degree]");
      }
    }
  }
  const ThresholdMap t = normalize_thresholds(forest, thresholds);
  const int inf = out.time_infinity;
  auto& state = out.state;
  for (Vertex v : targets) state[v].required = true;

  std::vector<char> in_seed(static_cast<std::size_t>(n), 0);
  const auto seed = [&](Vertex v) {
    in_seed[v] = 1;
    state[v].time = 0;
  };

  if (lambda == 0) {
    // Only seeded vertices are active at round 0.
    for (Vertex v = 0; v < n; ++v) {
      state[v].time = t[v] == 0 ? 1 : inf;
      if (state[v].required) seed(v);
    }
  } else {
    const RootedTree& rt = out.rooted;
    // Leaves first, then internal nodes in reverse BFS order.
    for (Vertex v : rt.order) {
      if (!rt.is_leaf(v)) continue;
      auto& s = state[v];
      s.time = t[v] == 0 ? 1 : inf;
      s.path = -1;
      s.max_path = 0;
      if (!s.required || t[v] == 0) continue;
      if (t[v] == 1 && !rt.is_root(v)) {
        state[rt.parent[v]].required = true;
        s.path = 0;
      } else {
        seed(v);  // isolated vertex, or a leaf no neighbor set can activate
      }
    }
    std::vector<int> child_times;
    for (Vertex v : rt.order) {
      if (rt.is_leaf(v)) continue;
      auto& s = state[v];
      const auto& kids = rt.children[v];
      int longest = -1;
      for (Vertex u : kids) longest = std::max(longest, state[u].path);
      s.max_path = 1 + longest;
      const int deadline = lambda - s.max_path;
      s.act_count = static_cast<int>(
          std::count_if(kids.begin(), kids.end(), [&](Vertex u) { return state[u].time < deadline; }));
      s.path = -1;
      child_times.clear();
      for (Vertex u : kids) child_times.push_back(state[u].time);
      if (t[v] == 0) {
        s.time = 1;
      } else if (t[v] > static_cast<int>(kids.size())) {
        s.time = inf;
      } else {
        s.time = std::min(inf, 1 + select_tth_smallest(child_times, t[v]));
      }
      if (!s.required) continue;
      if (!rt.is_root(v)) {
        if (s.act_count <= t[v] - 2 || s.max_path == lambda) {
          seed(v);
        } else if (s.act_count == t[v] - 1) {
          state[rt.parent[v]].required = true;
          s.path = s.max_path;
        }
      } else if (s.act_count <= t[v] - 1 || s.max_path == lambda) {
        seed(v);
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (in_seed[v]) out.seeds.push_back(v);
  }
  return out;
}

std::vector<NodeAudit> audit(const RootedTree& rooted, const Graph& forest, const ThresholdMap& thresholds,
                             int lambda, std::span<const Vertex> targets, std::span<const Vertex> seeds) {
  const int n = forest.vertex_count();
  std::vector<char> in_target(static_cast<std::size_t>(n), 0);
  std::vector<char> in_seed(static_cast<std::size_t>(n), 0);
  for (Vertex v : targets) in_target[v] = 1;
  for (Vertex v : seeds) in_seed[v] = 1;

  std::vector<NodeAudit> out(static_cast<std::size_t>(n));
  // child_rounds[v]: activation round of each child of v within T(v).
  std::vector<std::vector<int>> child_rounds(static_cast<std::size_t>(n));
  std::vector<int> local(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    // Collect T(v) and simulate it in isolation.
    std::vector<Vertex> members{v};
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (Vertex c : rooted.children[members[i]]) members.push_back(c);
    }
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    std::vector<int> sub_thresholds;
    std::vector<Vertex> sub_seed;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const Vertex m = members[i];
      sub_thresholds.push_back(thresholds[m]);
      if (in_seed[m]) sub_seed.push_back(static_cast<Vertex>(i));
      for (Vertex c : rooted.children[m]) edges.emplace_back(static_cast<Vertex>(i), local[c]);
    }
    const Graph sub(static_cast<int>(members.size()), edges);
    const auto trace = simulate_to_fixpoint(sub, ThresholdMap(std::move(sub_thresholds)), sub_seed);
    const int r = trace.activation_round(0);
    out[v].time_star = r == ActivationTrace::kNever ? NodeAudit::kInfinity : r;
    for (Vertex c : rooted.children[v]) {
      const int rc = trace.activation_round(local[c]);
      child_rounds[v].push_back(rc == ActivationTrace::kNever ? NodeAudit::kInfinity : rc);
    }
    for (Vertex m : members) local[m] = -1;
  }

  for (Vertex v : rooted.order) {
    auto& a = out[v];
    if (rooted.is_leaf(v)) {
      a.max_path_star = 0;
      a.path_star = in_target[v] && !in_seed[v] ? 0 : -1;
      continue;
    }
    int longest = -1;
    for (Vertex c : rooted.children[v]) longest = std::max(longest, out[c].path_star);
    a.max_path_star = 1 + longest;
    const int i = a.max_path_star;
    a.path_star = -1;
    if (i < lambda && !in_seed[v] && (in_target[v] || i > 0)) {
      const int by = lambda - i - 1;
      const auto active = std::count_if(child_rounds[v].begin(), child_rounds[v].end(),
                                        [by](int rc) { return rc <= by; });
      if (active == thresholds[v] - 1) a.path_star = i;
    }
  }
  return out;
}

}  // namespace ltss::tree
