#include "ltss/kexpr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace ltss::kexpr {

ParseError::ParseError(const std::string& message, int line, int column)
    : KExprError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// Builder / KExpr

NodeId Builder::leaf(int label, std::string name) {
  nodes_.push_back(Node{NodeKind::kLeaf, label, 0, -1, -1, std::move(name)});
  return static_cast<NodeId>(nodes_.size()) - 1;
}

NodeId Builder::unite(NodeId left, NodeId right) {
  nodes_.push_back(Node{NodeKind::kUnion, 0, 0, left, right, {}});
  return static_cast<NodeId>(nodes_.size()) - 1;
}

NodeId Builder::eta(int a, int b, NodeId child) {
  nodes_.push_back(Node{NodeKind::kEta, a, b, child, -1, {}});
  return static_cast<NodeId>(nodes_.size()) - 1;
}

NodeId Builder::rho(int from, int to, NodeId child) {
  nodes_.push_back(Node{NodeKind::kRho, from, to, child, -1, {}});
  return static_cast<NodeId>(nodes_.size()) - 1;
}

NodeId Builder::append(const KExpr& e) {
  const auto offset = static_cast<NodeId>(nodes_.size());
  for (Node n : e.nodes()) {
    if (n.left >= 0) n.left += offset;
    if (n.right >= 0) n.right += offset;
    nodes_.push_back(std::move(n));
  }
  return offset + e.root();
}

KExpr Builder::build(NodeId root) && {
  if (root < 0 || root >= static_cast<NodeId>(nodes_.size())) throw KExprError("root node out of range");
  // Iterative post-order, left operand first.
  std::vector<Node> out;
  out.reserve(nodes_.size());
  std::vector<NodeId> new_id(nodes_.size(), -1);
  std::vector<char> visited(nodes_.size(), 0);
  std::vector<std::pair<NodeId, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    const Node& node = nodes_[id];
    if (!expanded) {
      if (visited[id]) throw KExprError("node shared between two parents");
      visited[id] = 1;
      stack.emplace_back(id, true);
      if (node.right >= 0) stack.emplace_back(node.right, false);
      if (node.left >= 0) stack.emplace_back(node.left, false);
      const bool needs_left = node.kind != NodeKind::kLeaf;
      const bool needs_right = node.kind == NodeKind::kUnion;
      if ((node.left >= 0) != needs_left || (node.right >= 0) != needs_right) {
        throw KExprError("node has the wrong number of operands");
      }
      for (NodeId c : {node.left, node.right}) {
        if (c >= static_cast<NodeId>(nodes_.size()) || (c >= 0 && c == id)) throw KExprError("bad child reference");
      }
      continue;
    }
    Node copy = node;
    if (copy.left >= 0) copy.left = new_id[copy.left];
    if (copy.right >= 0) copy.right = new_id[copy.right];
    new_id[id] = static_cast<NodeId>(out.size());
    out.push_back(std::move(copy));
  }
  return KExpr(std::move(out));
}

KExpr::KExpr(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  const auto count = nodes_.size();
  leaf_begin_.assign(count, 0);
  leaf_span_.assign(count, 0);
  subtree_first_.assign(count, 0);
  std::unordered_set<std::string> names;
  for (NodeId id = 0; id < static_cast<NodeId>(count); ++id) {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case NodeKind::kLeaf:
        if (n.a < 1) throw KExprError("label must be positive in leaf '" + n.name + "'");
        if (n.name.empty()) throw KExprError("leaf without vertex name");
        if (!names.insert(n.name).second) throw KExprError("duplicate vertex name '" + n.name + "'");
        leaf_begin_[id] = static_cast<int>(leaf_nodes_.size());
        leaf_span_[id] = 1;
        subtree_first_[id] = id;
        leaf_nodes_.push_back(id);
        break;
      case NodeKind::kUnion:
        leaf_begin_[id] = leaf_begin_[n.left];
        leaf_span_[id] = leaf_span_[n.left] + leaf_span_[n.right];
        subtree_first_[id] = subtree_first_[n.left];
        break;
      case NodeKind::kEta:
      case NodeKind::kRho:
        if (n.a < 1 || n.b < 1) throw KExprError("labels must be positive");
        if (n.a == n.b) {
          throw KExprError(std::string(n.kind == NodeKind::kEta ? "eta" : "rho") + " needs two distinct labels, got " +
                           std::to_string(n.a) + " twice");
        }
        leaf_begin_[id] = leaf_begin_[n.left];
        leaf_span_[id] = leaf_span_[n.left];
        subtree_first_[id] = subtree_first_[n.left];
        break;
    }
  }
  if (nodes_.empty()) throw KExprError("empty expression");

  // Numeric names that form exactly 0..n-1 are used as vertex ids.
  const int n = leaf_count();
  std::vector<Vertex> ids(static_cast<std::size_t>(n), -1);
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  bool numeric = true;
  for (int i = 0; i < n && numeric; ++i) {
    const std::string& name = nodes_[leaf_nodes_[i]].name;
    int value = -1;
    auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
    numeric = ec == std::errc() && ptr == name.data() + name.size() && value >= 0 && value < n && !taken[value] &&
              (name.size() == 1 || name[0] != '0');
    if (numeric) {
      ids[i] = value;
      taken[value] = 1;
    }
  }
  if (!numeric) {
    for (int i = 0; i < n; ++i) ids[i] = i;
  }
  vertex_ids_ = std::move(ids);
}

KExpr KExpr::leaf(int label, std::string name) {
  Builder b;
  return std::move(b).build(b.leaf(label, std::move(name)));
}

KExpr KExpr::unite(const KExpr& left, const KExpr& right) {
  Builder b;
  const NodeId l = b.append(left);
  const NodeId r = b.append(right);
  return std::move(b).build(b.unite(l, r));
}

KExpr KExpr::eta(int a, int b_label, const KExpr& child) {
  Builder b;
  return std::move(b).build(b.eta(a, b_label, b.append(child)));
}

KExpr KExpr::rho(int from, int to, const KExpr& child) {
  Builder b;
  return std::move(b).build(b.rho(from, to, b.append(child)));
}

int KExpr::max_label() const {
  int m = 0;
  for (const Node& n : nodes_) m = std::max({m, n.a, n.b});
  return m;
}

int KExpr::width() const {
  std::unordered_set<int> labels;
  for (const Node& n : nodes_) {
    labels.insert(n.a);
    if (n.kind != NodeKind::kLeaf && n.kind != NodeKind::kUnion) labels.insert(n.b);
  }
  labels.erase(0);
  return static_cast<int>(labels.size());
}

std::vector<Vertex> LabeledGraph::vertices_with_label(int l) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(label.size()); ++v) {
    if (label[v] == l) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

constexpr int kMaxDepth = 50000;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  KExpr run() {
    const NodeId root = expr(0);
    skip_space();
    if (pos_ != text_.size()) fail("trailing input after expression");
    return std::move(builder_).build(root);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column_); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) {
      fail("expected '" + std::string(token) + "'" +
           (pos_ < text_.size() ? " near '" + std::string(1, text_[pos_]) + "'" : " at end of input"));
    }
    for (std::size_t i = 0; i < token.size(); ++i) advance();
  }

  int label() {
    skip_space();
    const int line = line_;
    const int column = column_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a label");
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000) throw ParseError("label too large", line, column);
      advance();
    }
    if (value == 0) throw ParseError("label 0 is not allowed; labels start at 1", line, column);
    return static_cast<int>(value);
  }

  std::string ident() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      advance();
    }
    if (start == pos_) fail("expected a vertex name");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool keyword(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t after = pos_ + word.size();
    std::size_t look = after;
    while (look < text_.size() && std::isspace(static_cast<unsigned char>(text_[look]))) ++look;
    if (look >= text_.size() || text_[look] != '(') return false;
    for (std::size_t i = 0; i < word.size(); ++i) advance();
    return true;
  }

  void distinct(int a, int b, const char* op, int line, int column) const {
    if (a == b) {
      throw ParseError(std::string(op) + " needs distinct labels, got " + std::to_string(a) + " twice", line, column);
    }
  }

  NodeId expr(int depth) {
    if (depth > kMaxDepth) fail("expression nested too deeply");
    const char c = peek();
    const int line = line_;
    const int column = column_;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const int a = label();
      expect("(");
      std::string name = ident();
      if (!names_.insert(name).second) throw ParseError("duplicate vertex name '" + name + "'", line, column);
      expect(")");
      return builder_.leaf(a, std::move(name));
    }
    if (keyword("U")) {
      expect("(");
      const NodeId left = expr(depth + 1);
      expect(",");
      const NodeId right = expr(depth + 1);
      expect(")");
      return builder_.unite(left, right);
    }
    if (keyword("eta")) {
      expect("(");
      const int a = label();
      expect(",");
      const int b = label();
      distinct(a, b, "eta", line, column);
      expect(",");
      const NodeId child = expr(depth + 1);
      expect(")");
      return builder_.eta(a, b, child);
    }
    if (keyword("rho")) {
      expect("(");
      const int a = label();
      expect("->");
      const int b = label();
      distinct(a, b, "rho", line, column);
      expect(",");
      const NodeId child = expr(depth + 1);
      expect(")");
      return builder_.rho(a, b, child);
    }
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Builder builder_;
  std::unordered_set<std::string> names_;
};

}  // namespace

KExpr parse(std::string_view text) { return Parser(text).run(); }

std::string format(const KExpr& e) {
  std::string out;
  // (node, stage) pairs; stage counts how many operands were emitted.
  std::vector<std::pair<NodeId, int>> stack{{e.root(), 0}};
  while (!stack.empty()) {
    auto& [id, stage] = stack.back();
    const Node& n = e.node(id);
    switch (n.kind) {
      case NodeKind::kLeaf:
        out += std::to_string(n.a) + "(" + n.name + ")";
        stack.pop_back();
        break;
      case NodeKind::kUnion:
        if (stage == 0) {
          out += "U(";
          stage = 1;
          stack.emplace_back(n.left, 0);
        } else if (stage == 1) {
          out += ", ";
          stage = 2;
          stack.emplace_back(n.right, 0);
        } else {
          out += ")";
          stack.pop_back();
        }
        break;
      case NodeKind::kEta:
      case NodeKind::kRho:
        if (stage == 0) {
          out += n.kind == NodeKind::kEta ? "eta(" + std::to_string(n.a) + "," + std::to_string(n.b) + ", "
                                          : "rho(" + std::to_string(n.a) + "->" + std::to_string(n.b) + ", ";
          stage = 1;
          stack.emplace_back(n.left, 0);
        } else {
          out += ")";
          stack.pop_back();
        }
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct EtaStats {
  NodeId node;
  long long existing;  // a-b pairs already adjacent
  long long pairs;     // |V_a| * |V_b|
  Edge offending;      // leaf indices of one existing pair
};

// Replays the construction over nodes [first, last] (a whole subtree) in leaf
// index space, reporting every eta before it is applied.
class Walker {
 public:
  explicit Walker(const KExpr& e) : e_(e), label_(e.leaf_count(), 0), adjacency_(e.leaf_count()) {}

  void run(NodeId first, NodeId last, const std::function<void(const EtaStats&)>& on_eta = {}) {
    for (NodeId id = first; id <= last; ++id) {
      const Node& n = e_.node(id);
      const int begin = e_.leaf_begin(id);
      const int end = begin + e_.leaf_span(id);
      switch (n.kind) {
        case NodeKind::kLeaf:
          label_[begin] = n.a;
          break;
        case NodeKind::kUnion:
          break;
        case NodeKind::kEta: {
          EtaStats stats{id, 0, 0, {-1, -1}};
          std::vector<int> side_a;
          std::vector<int> side_b;
          for (int i = begin; i < end; ++i) {
            if (label_[i] == n.a) side_a.push_back(i);
            if (label_[i] == n.b) side_b.push_back(i);
          }
          stats.pairs = static_cast<long long>(side_a.size()) * static_cast<long long>(side_b.size());
          for (int u : side_a) {
            for (int w : adjacency_[u]) {
              if (label_[w] == n.b) {
                if (stats.existing == 0) stats.offending = {u, w};
                ++stats.existing;
              }
            }
          }
          if (on_eta) on_eta(stats);
          for (int u : side_a) {
            for (int w : side_b) {
              if (stats.existing > 0 && edge_keys_.contains(key(u, w))) continue;
              adjacency_[u].push_back(w);
              adjacency_[w].push_back(u);
              edge_keys_.insert(key(u, w));
            }
          }
          break;
        }
        case NodeKind::kRho:
          for (int i = begin; i < end; ++i) {
            if (label_[i] == n.a) label_[i] = n.b;
          }
          break;
      }
    }
  }

  LabeledGraph result() const {
    const int n = e_.leaf_count();
    const auto ids = e_.vertex_ids();
    LabeledGraph out;
    out.label.assign(static_cast<std::size_t>(n), 0);
    out.names.assign(static_cast<std::size_t>(n), {});
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      out.label[ids[i]] = label_[i];
      out.names[ids[i]] = e_.node(e_.leaf_nodes()[i]).name;
      for (int j : adjacency_[i]) {
        if (i < j) edges.emplace_back(ids[i], ids[j]);
      }
    }
    out.graph = Graph(n, edges);
    return out;
  }

 private:
  static std::uint64_t key(int u, int w) {
    if (u > w) std::swap(u, w);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(w);
  }

  const KExpr& e_;
  std::vector<int> label_;
  std::vector<std::vector<int>> adjacency_;
  std::unordered_set<std::uint64_t> edge_keys_;
};

}  // namespace

LabeledGraph evaluate(const KExpr& e) {
  Walker walker(e);
  walker.run(0, e.root());
  return walker.result();
}

LabeledGraph evaluate_subexpression(const KExpr& e, NodeId node) {
  Walker walker(e);
  walker.run(e.subtree_first(node), node);
  return walker.result();
}

std::vector<Violation> check_irredundant(const KExpr& e) {
  std::vector<Violation> out;
  const auto ids = e.vertex_ids();
  Walker walker(e);
  walker.run(0, e.root(), [&](const EtaStats& s) {
    if (s.existing > 0) {
      const Node& n = e.node(s.node);
      out.push_back(Violation{s.node, n.a, n.b, {ids[s.offending.first], ids[s.offending.second]}});
    }
  });
  return out;
}

KExpr normalize_irredundant(const KExpr& e) {
  std::vector<char> drop(static_cast<std::size_t>(e.size()), 0);
  Walker walker(e);
  walker.run(0, e.root(), [&](const EtaStats& s) {
    if (s.existing == s.pairs) {
      drop[s.node] = 1;
    } else if (s.existing > 0) {
      const Node& n = e.node(s.node);
      throw PartialRedundancyError("eta(" + std::to_string(n.a) + "," + std::to_string(n.b) + ") at node " +
                                       std::to_string(s.node) + " adds " + std::to_string(s.pairs - s.existing) +
                                       " of " + std::to_string(s.pairs) + " cross edges; supply an irredundant expression",
                                   s.node);
    }
  });
  Builder b;
  std::vector<NodeId> mapped(static_cast<std::size_t>(e.size()), -1);
  for (NodeId id = 0; id < e.size(); ++id) {
    const Node& n = e.node(id);
    switch (n.kind) {
      case NodeKind::kLeaf:
        mapped[id] = b.leaf(n.a, n.name);
        break;
      case NodeKind::kUnion:
        mapped[id] = b.unite(mapped[n.left], mapped[n.right]);
        break;
      case NodeKind::kEta:
        mapped[id] = drop[id] ? mapped[n.left] : b.eta(n.a, n.b, mapped[n.left]);
        break;
      case NodeKind::kRho:
        mapped[id] = b.rho(n.a, n.b, mapped[n.left]);
        break;
    }
  }
  return std::move(b).build(mapped[e.root()]);
}

KExpr lift_for_targets(const KExpr& e, std::span<const Vertex> targets, int k) {
  if (e.max_label() > k) {
    throw KExprError("expression uses label " + std::to_string(e.max_label()) + " above k=" + std::to_string(k));
  }
  const int n = e.leaf_count();
  std::vector<char> marked(static_cast<std::size_t>(n), 0);
  for (Vertex v : targets) {
    if (v < 0 || v >= n) throw KExprError("target vertex " + std::to_string(v) + " is not in the expression");
    marked[v] = 1;
  }
  const auto ids = e.vertex_ids();
  Builder b;
  std::vector<NodeId> mapped(static_cast<std::size_t>(e.size()), -1);
  for (NodeId id = 0; id < e.size(); ++id) {
    const Node& node = e.node(id);
    switch (node.kind) {
      case NodeKind::kLeaf: {
        const Vertex v = ids[e.leaf_begin(id)];
        mapped[id] = b.leaf(marked[v] ? node.a + k : node.a, node.name);
        break;
      }
      case NodeKind::kUnion:
        mapped[id] = b.unite(mapped[node.left], mapped[node.right]);
        break;
      case NodeKind::kEta: {
        const int i = node.a;
        const int j = node.b;
        NodeId c = b.eta(i + k, j + k, mapped[node.left]);
        c = b.eta(i + k, j, c);
        c = b.eta(i, j + k, c);
        mapped[id] = b.eta(i, j, c);
        break;
      }
      case NodeKind::kRho:
        mapped[id] = b.rho(node.a, node.b, b.rho(node.a + k, node.b + k, mapped[node.left]));
        break;
    }
  }
  return std::move(b).build(mapped[e.root()]);
}

// ---------------------------------------------------------------------------
// Generators

KExpr tree_expression(const Graph& tree, Vertex root) {
  if (!tree.is_tree()) throw KExprError("input graph is not a tree");
  if (!tree.has_vertex(root)) throw KExprError("root out of range");
  const int n = tree.vertex_count();
  if (n == 1) return KExpr::leaf(1, std::to_string(root));

  std::vector<Vertex> order;
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  order.reserve(static_cast<std::size_t>(n));
  order.push_back(root);
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex w : tree.neighbors(order[i])) {
      if (parent[w] == -1) {
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  // sub[v]: T(v) with v labeled 2 and every other vertex labeled 1.
  Builder b;
  std::vector<NodeId> sub(static_cast<std::size_t>(n), -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    NodeId cur = -1;
    for (Vertex c : tree.neighbors(v)) {
      if (c == parent[v] && v != root) continue;
      if (cur == -1) cur = b.leaf(3, std::to_string(v));
      cur = b.rho(2, 1, b.eta(3, 2, b.unite(cur, sub[c])));
    }
    sub[v] = cur == -1 ? b.leaf(2, std::to_string(v)) : b.rho(3, 2, cur);
  }
  return std::move(b).build(b.rho(2, 1, sub[root]));
}

KExpr path_expression(int n) {
  if (n < 1) throw KExprError("path needs at least one vertex");
  Builder b;
  if (n == 1) return std::move(b).build(b.leaf(1, "0"));
  NodeId cur = b.eta(2, 1, b.unite(b.leaf(2, "1"), b.leaf(1, "0")));
  for (int v = 2; v < n; ++v) {
    if (v > 2) cur = b.rho(3, 2, b.rho(2, 1, cur));
    cur = b.eta(3, 2, b.unite(b.leaf(3, std::to_string(v)), cur));
  }
  return std::move(b).build(cur);
}

KExpr star_expression(int n) {
  if (n < 1) throw KExprError("star needs at least one vertex");
  Builder b;
  NodeId cur = b.leaf(1, "0");
  if (n == 1) return std::move(b).build(cur);
  NodeId leaves = b.leaf(2, "1");
  for (int v = 2; v < n; ++v) leaves = b.unite(leaves, b.leaf(2, std::to_string(v)));
  return std::move(b).build(b.eta(1, 2, b.unite(cur, leaves)));
}

KExpr random_cograph_expression(int n, std::mt19937_64& rng) {
  if (n < 1) throw KExprError("cograph needs at least one vertex");
  std::vector<int> names(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) names[i] = i;
  std::shuffle(names.begin(), names.end(), rng);
  Builder b;
  std::bernoulli_distribution join(0.5);
  // Every subexpression has all its vertices labeled 1.
  std::function<NodeId(int, int)> build = [&](int lo, int hi) -> NodeId {
    if (hi - lo == 1) return b.leaf(1, std::to_string(names[lo]));
    std::uniform_int_distribution<int> cut(lo + 1, hi - 1);
    const int mid = cut(rng);
    const NodeId left = build(lo, mid);
    const NodeId right = build(mid, hi);
    if (!join(rng)) return b.unite(left, right);
    return b.rho(2, 1, b.eta(1, 2, b.unite(left, b.rho(1, 2, right))));
  };
  return std::move(b).build(build(0, n));
}

KExpr random_expression(const RandomExprOptions& options, std::mt19937_64& rng) {
  if (options.vertices < 1 || options.max_label < 1) throw KExprError("bad random expression options");
  std::vector<int> names(static_cast<std::size_t>(options.vertices));
  for (int i = 0; i < options.vertices; ++i) names[i] = i;
  std::shuffle(names.begin(), names.end(), rng);

  std::uniform_int_distribution<int> pick_label(1, options.max_label);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Builder b;
  const auto decorate = [&](NodeId id) {
    if (options.max_label < 2) return id;
    for (int round = 0; round < 2; ++round) {
      const double roll = coin(rng);
      int x = pick_label(rng);
      int y = pick_label(rng);
      while (y == x) y = pick_label(rng);
      if (roll < options.eta_probability) {
        id = b.eta(x, y, id);
      } else if (roll < options.eta_probability + options.rho_probability) {
        id = b.rho(x, y, id);
      }
    }
    return id;
  };
  std::vector<NodeId> pool;
  for (int name : names) pool.push_back(b.leaf(pick_label(rng), std::to_string(name)));
  while (pool.size() > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 2);
    const std::size_t i = pick(rng);
    const NodeId joined = decorate(b.unite(pool[i], pool[i + 1]));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    pool[i] = joined;
  }
  return std::move(b).build(pool.front());
}

}  // namespace ltss::kexpr
