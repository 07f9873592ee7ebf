// ltss: command-line front end for the latency-bounded target set solvers.
//
//   ltss simulate --instance i.json --seed 0,2
//   ltss solve --method {tree|cwd|brute} [--variant {lba|lbA|lA}] --instance i.json
//   ltss kexpr {parse|eval|check|lift} (--expr TEXT | --file PATH)
//   ltss gen {path|star|random-tree|cograph} --n N [--seed S]
//   ltss bench scaling --sizes 100000,200000
//
// Results are JSON documents on stdout (or --output). Exit codes: 0 success,
// 1 infeasible, 2 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ltss/activation.hpp"
#include "ltss/cwd_solver.hpp"
#include "ltss/instance_io.hpp"
#include "ltss/kexpr.hpp"
#include "ltss/oracle.hpp"
#include "ltss/tree_solver.hpp"

namespace {

using nlohmann::json;
using namespace ltss;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;

// Largest generated instance that still carries its kexpr text; loading
// cross-checks the expression, which is quadratic in n.
constexpr int kMaxGeneratedExpr = 2000;

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const json& doc, const std::string& output) {
  if (output.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(output);
  if (!out) throw io::InputError("cannot write " + output);
  out << doc.dump(2) << '\n';
}

std::vector<int> trace_sizes(const ActivationTrace& trace) {
  std::vector<int> sizes;
  for (int i = 0; i <= trace.lambda(); ++i) sizes.push_back(trace.size_at(i));
  return sizes;
}

Variant infer_variant(const Instance& inst) {
  if (inst.targets) return inst.budget ? Variant::kBudgetTargets : Variant::kTargets;
  if (inst.budget && inst.requirement) return Variant::kBudgetRequirement;
  throw io::InputError("cannot infer variant: instance needs targets, or budget and alpha");
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string instance;
  std::vector<int> seed;
  std::string output;
};

int run_simulate(const SimulateArgs& args) {
  const auto loaded = io::load_instance(args.instance);
  const Instance& inst = loaded.instance;
  const Stopwatch clock;
  ActivationTrace trace = [&] {
    try {
      return simulate(inst.graph, inst.thresholds, args.seed, inst.lambda);
    } catch (const std::out_of_range& e) {
      throw io::InputError(e.what());
    }
  }();
  json doc;
  doc["command"] = "simulate";
  doc["lambda"] = inst.lambda;
  doc["seed"] = args.seed;
  doc["rounds"] = trace.rounds();
  doc["trace_sizes"] = trace_sizes(trace);
  doc["active"] = trace.active_at(inst.lambda);
  doc["wall_time_ms"] = clock.elapsed_ms();
  emit(doc, args.output);
  return kOk;
}

// ---- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string method;
  std::string variant;
  std::optional<int> root;
  std::string output;
};

struct Outcome {
  bool feasible = false;
  std::optional<std::vector<Vertex>> seeds;
};

Outcome solve_tree(const Instance& inst, Variant variant, std::optional<int> root) {
  if (variant == Variant::kBudgetRequirement) throw io::InputError("tree method solves only the lbA and lA variants");
  tree::SolveOptions options;
  options.root = root;
  const auto sol = tree::solve(inst.graph, inst.thresholds, inst.lambda, *inst.targets, options);
  if (variant == Variant::kBudgetTargets && static_cast<int>(sol.seeds.size()) > *inst.budget) return {};
  return {true, sol.seeds};
}

kexpr::KExpr expression_for(const io::LoadedInstance& loaded, std::optional<int> root) {
  if (loaded.expression) return kexpr::normalize_irredundant(*loaded.expression);
  if (loaded.instance.graph.is_tree()) return kexpr::tree_expression(loaded.instance.graph, root.value_or(0));
  throw io::InputError("cwd method needs a kexpr field unless the graph is a tree");
}

Outcome solve_cwd(const io::LoadedInstance& loaded, Variant variant, std::optional<int> root) {
  const Instance& inst = loaded.instance;
  const kexpr::KExpr e = expression_for(loaded, root);
  Outcome out;
  switch (variant) {
    case Variant::kBudgetRequirement:
      out.seeds = cwd::select(e, inst.thresholds, inst.lambda, *inst.budget, *inst.requirement);
      break;
    case Variant::kBudgetTargets:
      out.seeds = cwd::select_targets(e, inst.thresholds, inst.lambda, *inst.budget, *inst.targets);
      break;
    case Variant::kTargets: {
      cwd::TargetSolver solver(e, inst.thresholds, inst.lambda, *inst.targets);
      if (auto beta = solver.minimum_budget()) out.seeds = solver.select(*beta);
      break;
    }
  }
  out.feasible = out.seeds.has_value();
  return out;
}

Outcome solve_brute(const Instance& inst, Variant variant) {
  Outcome out;
  switch (variant) {
    case Variant::kBudgetRequirement: {
      auto d = oracle::brute_decision(inst.graph, inst.thresholds, inst.lambda, *inst.budget, *inst.requirement);
      if (d.feasible) out.seeds = std::move(d.witness);
      break;
    }
    case Variant::kBudgetTargets:
      out.seeds = oracle::brute_select_targets(inst.graph, inst.thresholds, inst.lambda, *inst.budget, *inst.targets);
      break;
    case Variant::kTargets:
      out.seeds = oracle::brute_min_target(inst.graph, inst.thresholds, inst.lambda, *inst.targets);
      break;
  }
  out.feasible = out.seeds.has_value();
  return out;
}

int run_solve(const SolveArgs& args) {
  const auto loaded = io::load_instance(args.instance);
  const Instance& inst = loaded.instance;
  Variant variant;
  if (args.variant.empty()) {
    variant = infer_variant(inst);
  } else {
    variant = *parse_variant(args.variant);
  }
  try {
    require_fields(inst, variant);
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  }
  if (args.root && !inst.graph.has_vertex(*args.root)) throw io::InputError("root out of range");

  const Stopwatch clock;
  Outcome outcome;
  try {
    if (args.method == "tree") {
      outcome = solve_tree(inst, variant, args.root);
    } else if (args.method == "cwd") {
      outcome = solve_cwd(loaded, variant, args.root);
    } else {
      outcome = solve_brute(inst, variant);
    }
  } catch (const tree::NotATreeError& e) {
    throw io::InputError(e.what());
  } catch (const oracle::LimitExceeded& e) {
    throw io::InputError(e.what());
  } catch (const kexpr::KExprError& e) {
    throw io::InputError(e.what());
  }
  const double ms = clock.elapsed_ms();

  json doc;
  doc["command"] = "solve";
  doc["solver"] = args.method;
  doc["variant"] = std::string(variant_name(variant));
  doc["answer"] = variant == Variant::kTargets ? json(outcome.seeds ? static_cast<int>(outcome.seeds->size()) : -1)
                                               : json(outcome.feasible);
  if (outcome.seeds) {
    doc["target_set"] = *outcome.seeds;
    doc["trace_sizes"] = trace_sizes(simulate(inst.graph, inst.thresholds, *outcome.seeds, inst.lambda));
    doc["verified"] = verify_solution(inst, variant, *outcome.seeds);
  } else {
    doc["target_set"] = nullptr;
    doc["trace_sizes"] = json::array();
  }
  doc["wall_time_ms"] = ms;
  emit(doc, args.output);
  return outcome.feasible ? kOk : kInfeasible;
}

// ---- kexpr ------------------------------------------------------------------

struct KExprArgs {
  std::string expr;
  std::string file;
  std::vector<int> targets;
  int k = 0;
  std::string output;
};

kexpr::KExpr read_expression(const KExprArgs& args) {
  std::string text = args.expr;
  if (!args.file.empty()) {
    std::ifstream in(args.file);
    if (!in) throw io::InputError("cannot open " + args.file);
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  if (text.empty()) throw io::InputError("pass --expr or --file");
  try {
    return kexpr::parse(text);
  } catch (const kexpr::KExprError& e) {
    throw io::InputError(e.what());
  }
}

int run_kexpr(const std::string& action, const KExprArgs& args) {
  const kexpr::KExpr e = read_expression(args);
  json doc;
  doc["command"] = "kexpr " + action;
  int status = kOk;
  if (action == "parse") {
    doc["expression"] = kexpr::format(e);
    doc["nodes"] = e.size();
    doc["vertices"] = e.leaf_count();
    doc["width"] = e.width();
    doc["max_label"] = e.max_label();
  } else if (action == "eval") {
    const auto h = kexpr::evaluate(e);
    doc["n"] = h.graph.vertex_count();
    json edges = json::array();
    for (auto [u, v] : h.graph.edges()) edges.push_back({u, v});
    doc["edges"] = std::move(edges);
    doc["labels"] = h.label;
    doc["names"] = h.names;
  } else if (action == "check") {
    const auto violations = kexpr::check_irredundant(e);
    doc["irredundant"] = violations.empty();
    json list = json::array();
    for (const auto& v : violations) {
      list.push_back({{"node", v.node}, {"a", v.a}, {"b", v.b}, {"edge", {v.edge.first, v.edge.second}}});
    }
    doc["violations"] = std::move(list);
    if (!violations.empty()) status = kInfeasible;
  } else {
    try {
      const auto lifted = kexpr::lift_for_targets(e, args.targets, args.k > 0 ? args.k : e.max_label());
      doc["expression"] = kexpr::format(lifted);
    } catch (const kexpr::KExprError& err) {
      throw io::InputError(err.what());
    }
  }
  emit(doc, args.output);
  return status;
}

// ---- gen --------------------------------------------------------------------

struct GenArgs {
  int n = 5;
  std::uint64_t seed = 1;
  std::optional<int> lambda;
  bool random_thresholds = false;
  double target_probability = 1.0;
  std::string output;
};

kexpr::KExpr random_tree_expression(int n, std::mt19937_64& rng, Graph& tree) {
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  for (int v = 1; v < n; ++v) parent[v] = std::uniform_int_distribution<int>(0, v - 1)(rng);
  tree = make_tree_from_parents(parent);
  return kexpr::tree_expression(tree, 0);
}

int run_gen(const std::string& family, const GenArgs& args) {
  std::mt19937_64 rng(args.seed);
  Graph g;
  std::optional<kexpr::KExpr> e;
  if (family == "path") {
    g = make_path(args.n);
    e = kexpr::path_expression(args.n);
  } else if (family == "star") {
    g = make_star(args.n);
    e = kexpr::star_expression(args.n);
  } else if (family == "random-tree") {
    e = random_tree_expression(args.n, rng, g);
  } else {
    e = kexpr::random_cograph_expression(args.n, rng);
    g = kexpr::evaluate(*e).graph;
  }
  if (args.n > kMaxGeneratedExpr) e.reset();

  Instance inst;
  inst.graph = g;
  std::vector<int> t(static_cast<std::size_t>(args.n), 1);
  if (args.random_thresholds) {
    for (Vertex v = 0; v < args.n; ++v) {
      t[v] = std::uniform_int_distribution<int>(1, std::max(1, g.degree(v)))(rng);
    }
  }
  inst.thresholds = ThresholdMap(std::move(t));
  inst.lambda = args.lambda.value_or(args.n);
  std::vector<Vertex> targets;
  std::bernoulli_distribution pick(args.target_probability);
  for (Vertex v = 0; v < args.n; ++v) {
    if (pick(rng)) targets.push_back(v);
  }
  inst.targets = std::move(targets);
  emit(io::to_json(inst, e), args.output);
  return kOk;
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
  std::vector<int> sizes{100000, 200000};
  int repeats = 3;
  std::string output;
};

// Best-of-`repeats` tree-solver time on a path with t = 1, A = V, λ = n.
double time_path_solve(int n, int repeats) {
  const Graph g = make_path(n);
  const ThresholdMap t = ThresholdMap::uniform(n, 1);
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) all[v] = v;
  double best = 0;
  for (int i = 0; i < repeats; ++i) {
    const Stopwatch clock;
    const auto sol = tree::solve(g, t, n, all);
    const double ms = clock.elapsed_ms();
    if (sol.seeds.empty()) throw std::logic_error("path solve returned no seeds");
    if (i == 0 || ms < best) best = ms;
  }
  return best;
}

int run_bench(const BenchArgs& args) {
  json rows = json::array();
  double first = 0;
  for (std::size_t i = 0; i < args.sizes.size(); ++i) {
    const int n = args.sizes[i];
    if (n < 1) throw io::InputError("sizes must be positive");
    const double ms = time_path_solve(n, args.repeats);
    if (i == 0) first = ms;
    rows.push_back({{"n", n}, {"wall_time_ms", ms}, {"ratio_to_first", first > 0 ? ms / first : 0.0}});
  }
  json doc;
  doc["command"] = "bench scaling";
  doc["solver"] = "tree";
  doc["results"] = std::move(rows);
  emit(doc, args.output);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latency-bounded target set selection toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the activation process from a seed set");
  simulate_cmd->add_option("--instance", sim.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("--seed", sim.seed, "Seed vertices, comma separated")->delimiter(',');
  simulate_cmd->add_option("--output", sim.output, "Write the result here instead of stdout");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--method", solve.method, "Solver")->required()->check(CLI::IsMember({"tree", "cwd", "brute"}));
  solve_cmd->add_option("--variant", solve.variant, "Problem variant (default: inferred from fields)")
      ->check(CLI::IsMember({"lba", "lbA", "lA"}));
  solve_cmd->add_option("--root", solve.root, "Root vertex for the tree solver");
  solve_cmd->add_option("--output", solve.output, "Write the result here instead of stdout");

  std::string kexpr_action;
  KExprArgs kx;
  auto* kexpr_cmd = app.add_subcommand("kexpr", "Parse, evaluate, check or lift a k-expression");
  kexpr_cmd->add_option("action", kexpr_action, "parse | eval | check | lift")
      ->required()
      ->check(CLI::IsMember({"parse", "eval", "check", "lift"}));
  auto* expr_opt = kexpr_cmd->add_option("--expr", kx.expr, "Expression text");
  kexpr_cmd->add_option("--file", kx.file, "File holding the expression")->check(CLI::ExistingFile)->excludes(expr_opt);
  kexpr_cmd->add_option("--targets", kx.targets, "Target vertex ids for lift")->delimiter(',');
  kexpr_cmd->add_option("--k", kx.k, "Label count k for lift (default: largest label)");
  kexpr_cmd->add_option("--output", kx.output, "Write the result here instead of stdout");

  std::string family;
  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance document");
  gen_cmd->add_option("family", family, "path | star | random-tree | cograph")
      ->required()
      ->check(CLI::IsMember({"path", "star", "random-tree", "cograph"}));
  gen_cmd->add_option("--n", gen.n, "Vertex count")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--lambda", gen.lambda, "Latency bound (default n)")->check(CLI::NonNegativeNumber);
  gen_cmd->add_flag("--random-thresholds", gen.random_thresholds, "Thresholds uniform in [1, d(v)]");
  gen_cmd->add_option("--target-probability", gen.target_probability, "Probability that a vertex is a target")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--output", gen.output, "Write the document here instead of stdout");

  std::string bench_kind;
  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Timing runs");
  bench_cmd->add_option("kind", bench_kind, "scaling")->required()->check(CLI::IsMember({"scaling"}));
  bench_cmd->add_option("--sizes", bench.sizes, "Path sizes, comma separated")->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats, "Runs per size (best is reported)")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--output", bench.output, "Write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*simulate_cmd) return run_simulate(sim);
    if (*solve_cmd) return run_solve(solve);
    if (*kexpr_cmd) return run_kexpr(kexpr_action, kx);
    if (*gen_cmd) return run_gen(family, gen);
    return run_bench(bench);
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
