#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltss/graph.hpp"

namespace ltss::kexpr {

// Clique-width expressions over the four operations: vertex creation a(v),
// disjoint union U(.,.), eta(a,b,.) joining labels a and b, rho(a->b,.)
// renaming a to b.
//
// Concrete syntax (whitespace insignificant):
//   expr  := label "(" ident ")" | "U(" expr "," expr ")"
//          | "eta(" label "," label "," expr ")" | "rho(" label "->" label "," expr ")"
//   label := positive integer;  ident := [A-Za-z0-9_]+

enum class NodeKind : std::uint8_t { kLeaf, kUnion, kEta, kRho };

using NodeId = int;

struct Node {
  NodeKind kind = NodeKind::kLeaf;
  int a = 0;  // leaf label, or first label of eta/rho
  int b = 0;  // second label of eta/rho (rho: target label)
  NodeId left = -1;   // child of eta/rho, left operand of union
  NodeId right = -1;  // right operand of union
  std::string name;   // leaf vertex name

  friend bool operator==(const Node&, const Node&) = default;
};

class KExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public KExprError {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Raised by normalize_irredundant when an eta adds some but not all of its
// cross edges.
class PartialRedundancyError : public KExprError {
 public:
  PartialRedundancyError(const std::string& message, NodeId node) : KExprError(message), node_(node) {}
  NodeId node() const { return node_; }

 private:
  NodeId node_;
};

class KExpr;

// Incremental construction; children must be added before their parent.
class Builder {
 public:
  NodeId leaf(int label, std::string name);
  NodeId unite(NodeId left, NodeId right);
  NodeId eta(int a, int b, NodeId child);
  NodeId rho(int from, int to, NodeId child);
  // Copies `e` into this builder and returns the id of its root.
  NodeId append(const KExpr& e);

  // Throws KExprError on malformed structure (labels < 1, a == b, repeated
  // vertex names, shared subtrees). Nodes unreachable from `root` are dropped.
  KExpr build(NodeId root) &&;

 private:
  std::vector<Node> nodes_;
};

// Immutable AST. Nodes are stored in post-order with the left operand of a
// union laid out before the right one, so the leaves appear in text order
// and every subexpression covers a contiguous run of leaves.
class KExpr {
 public:
  static KExpr leaf(int label, std::string name);
  static KExpr unite(const KExpr& left, const KExpr& right);
  static KExpr eta(int a, int b, const KExpr& child);
  static KExpr rho(int from, int to, const KExpr& child);

  NodeId root() const { return static_cast<NodeId>(nodes_.size()) - 1; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::span<const Node> nodes() const { return nodes_; }
  int size() const { return static_cast<int>(nodes_.size()); }

  int leaf_count() const { return static_cast<int>(leaf_nodes_.size()); }
  // Leaf node ids in text order.
  std::span<const NodeId> leaf_nodes() const { return leaf_nodes_; }
  // First leaf index and leaf count covered by a node.
  int leaf_begin(NodeId id) const { return leaf_begin_[id]; }
  int leaf_span(NodeId id) const { return leaf_span_[id]; }
  // Smallest node id in the subtree of `id`; the subtree is [first, id].
  NodeId subtree_first(NodeId id) const { return subtree_first_[id]; }

  int max_label() const;
  // Number of distinct labels used anywhere in the expression.
  int width() const;

  // Graph vertex id of each leaf (text order). If every leaf name is a
  // decimal integer and together they are exactly 0..n-1, the name is the
  // id; otherwise ids follow text order.
  std::span<const Vertex> vertex_ids() const { return vertex_ids_; }

  friend bool operator==(const KExpr& x, const KExpr& y) { return x.nodes_ == y.nodes_; }

 private:
  friend class Builder;
  explicit KExpr(std::vector<Node> nodes);

  std::vector<Node> nodes_;
  std::vector<NodeId> leaf_nodes_;
  std::vector<int> leaf_begin_;
  std::vector<int> leaf_span_;
  std::vector<NodeId> subtree_first_;
  std::vector<Vertex> vertex_ids_;
};

struct LabeledGraph {
  Graph graph;
  std::vector<int> label;          // per vertex id
  std::vector<std::string> names;  // per vertex id

  std::vector<Vertex> vertices_with_label(int l) const;
};

KExpr parse(std::string_view text);
std::string format(const KExpr& e);
LabeledGraph evaluate(const KExpr& e);
// Labeled graph produced by the subexpression rooted at `node`, with vertices
// keeping their global ids (others isolated, label 0).
LabeledGraph evaluate_subexpression(const KExpr& e, NodeId node);

struct Violation {
  NodeId node = -1;
  int a = 0;
  int b = 0;
  Edge edge;  // an a-b edge already present before the eta, in vertex ids
};

std::vector<Violation> check_irredundant(const KExpr& e);
KExpr normalize_irredundant(const KExpr& e);

// Doubles the label set: leaves of `targets` move to label+k, each eta is
// replaced by four etas over the shifted pairs and each rho by two renames.
KExpr lift_for_targets(const KExpr& e, std::span<const Vertex> targets, int k);

// Width-3 irredundant expression for a tree, leaves named by vertex id.
KExpr tree_expression(const Graph& tree, Vertex root = 0);
KExpr path_expression(int n);
KExpr star_expression(int n);  // center is vertex 0
// Random cograph on n vertices, width 2, leaves named by vertex id.
KExpr random_cograph_expression(int n, std::mt19937_64& rng);

struct RandomExprOptions {
  int vertices = 4;
  int max_label = 3;
  double eta_probability = 0.5;
  double rho_probability = 0.3;
};
// Arbitrary (possibly redundant) well-formed expression, leaves named 0..n-1
// in a random order.
KExpr random_expression(const RandomExprOptions& options, std::mt19937_64& rng);

}  // namespace ltss::kexpr
