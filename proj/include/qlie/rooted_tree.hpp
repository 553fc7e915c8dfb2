// Planar binary rooted trees with leaves labelled by basis indices of H.
//
// Canonical codes follow the grammar
//   LEAF := digit+
//   TREE := LEAF | '(' TREE ',' TREE ')'
// with an optional root label prefix  LEAF '@'.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qlie {

class RootedTree {
 public:
  static RootedTree leaf(int label) {
    if (label < 0) throw std::invalid_argument("negative leaf label");
    RootedTree t;
    t.label_ = label;
    return t;
  }

  static RootedTree join(RootedTree left, RootedTree right) {
    RootedTree t;
    t.leaves_ = left.leaf_count() + right.leaf_count();
    t.left_ = std::make_shared<const RootedTree>(std::move(left));
    t.right_ = std::make_shared<const RootedTree>(std::move(right));
    return t;
  }

  bool is_leaf() const { return !left_; }
  int label() const { return label_; }
  const RootedTree& left() const { return *left_; }
  const RootedTree& right() const { return *right_; }
  std::size_t leaf_count() const { return leaves_; }
  std::size_t internal_count() const { return leaf_count() - 1; }

  /// Leaf labels in left-to-right order.
  std::vector<int> leaf_labels() const {
    std::vector<int> out;
    collect(out);
    return out;
  }

  std::string code() const {
    std::string s;
    append_code(s);
    return s;
  }

  void append_code(std::string& s) const {
    if (is_leaf()) {
      s += std::to_string(label_);
      return;
    }
    s += '(';
    left_->append_code(s);
    s += ',';
    right_->append_code(s);
    s += ')';
  }

  static RootedTree parse(std::string_view code) {
    std::size_t pos = 0;
    RootedTree t = parse_at(code, pos);
    if (pos != code.size()) throw std::invalid_argument("trailing characters in tree code '" + std::string(code) + "'");
    return t;
  }

  friend bool operator==(const RootedTree& a, const RootedTree& b) {
    if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf() && a.label_ == b.label_;
    return (a.left_ == b.left_ && a.right_ == b.right_) || (a.left() == b.left() && a.right() == b.right());
  }

 private:
  void collect(std::vector<int>& out) const {
    if (is_leaf()) {
      out.push_back(label_);
      return;
    }
    left_->collect(out);
    right_->collect(out);
  }

  static RootedTree parse_at(std::string_view s, std::size_t& pos) {
    if (pos >= s.size()) throw std::invalid_argument("truncated tree code");
    if (s[pos] == '(') {
      ++pos;
      RootedTree l = parse_at(s, pos);
      if (pos >= s.size() || s[pos] != ',') throw std::invalid_argument("expected ',' in tree code");
      ++pos;
      RootedTree r = parse_at(s, pos);
      if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("expected ')' in tree code");
      ++pos;
      return join(std::move(l), std::move(r));
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("expected leaf label in tree code");
    return leaf(std::stoi(std::string(s.substr(start, pos - start))));
  }

  int label_ = 0;
  std::size_t leaves_ = 1;
  std::shared_ptr<const RootedTree> left_, right_;
};

/// A rooted tree whose root is itself a labelled univalent vertex: an
/// element r (x) T of H (x) L'.
struct RootLabeledTree {
  int root = 0;
  RootedTree body;

  std::string code() const { return std::to_string(root) + "@" + body.code(); }

  static RootLabeledTree parse(std::string_view code) {
    auto at = code.find('@');
    if (at == std::string_view::npos || at == 0) throw std::invalid_argument("missing root label in '" + std::string(code) + "'");
    for (std::size_t i = 0; i < at; ++i)
      if (!std::isdigit(static_cast<unsigned char>(code[i]))) throw std::invalid_argument("bad root label");
    return {std::stoi(std::string(code.substr(0, at))), RootedTree::parse(code.substr(at + 1))};
  }

  friend bool operator==(const RootLabeledTree& a, const RootLabeledTree& b) {
    return a.root == b.root && a.body == b.body;
  }
};

inline std::size_t catalan(std::size_t m) {
  std::size_t c = 1;
  for (std::size_t i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

/// All planar binary trees with k leaves labelled from 1..n (unsorted).
inline std::vector<RootedTree> all_trees(unsigned n, unsigned k) {
  std::vector<std::vector<RootedTree>> by_size(k + 1);
  if (k == 0) return {};
  for (unsigned a = 1; a <= n; ++a) by_size[1].push_back(RootedTree::leaf(static_cast<int>(a)));
  for (unsigned size = 2; size <= k; ++size)
    for (unsigned l = 1; l < size; ++l)
      for (const auto& lt : by_size[l])
        for (const auto& rt : by_size[size - l]) by_size[size].push_back(RootedTree::join(lt, rt));
  return by_size[k];
}

/// Sorted canonical codes of all trees with k leaves, optionally with a root label.
inline std::vector<std::string> enumerate_rooted_trees(unsigned n, unsigned k, bool root_labeled) {
  std::vector<std::string> codes;
  auto trees = all_trees(n, k);
  for (const auto& t : trees) {
    if (!root_labeled) {
      codes.push_back(t.code());
      continue;
    }
    for (unsigned r = 1; r <= n; ++r) codes.push_back(std::to_string(r) + "@" + t.code());
  }
  std::sort(codes.begin(), codes.end());
  return codes;
}

/// Formal integer combination of trees.
using TreeCombination = std::vector<std::pair<RootedTree, int>>;

/// Antisymmetry and Jacobi relations of a tree, each placed in context:
/// one AS relation T + T' per internal vertex (T' swaps the branches there)
/// and one Jacobi relation per internal edge, in the forms
///   [[A,B],C] - [A,[B,C]] + [B,[A,C]]   (internal left child)
///   [C,[A,B]] - [[C,A],B] - [A,[C,B]]   (internal right child)
inline std::vector<TreeCombination> tree_relations(const RootedTree& t) {
  std::vector<TreeCombination> out;
  if (t.is_leaf()) return out;
  const RootedTree& l = t.left();
  const RootedTree& r = t.right();
  using RT = RootedTree;
  out.push_back({{t, 1}, {RT::join(r, l), 1}});
  if (!l.is_leaf()) {
    const RT& a = l.left();
    const RT& b = l.right();
    out.push_back({{t, 1}, {RT::join(a, RT::join(b, r)), -1}, {RT::join(b, RT::join(a, r)), 1}});
  }
  if (!r.is_leaf()) {
    const RT& a = r.left();
    const RT& b = r.right();
    out.push_back({{t, 1}, {RT::join(RT::join(l, a), b), -1}, {RT::join(a, RT::join(l, b)), -1}});
  }
  for (auto& rel : tree_relations(l)) {
    TreeCombination c;
    for (auto& [x, v] : rel) c.emplace_back(RT::join(x, r), v);
    out.push_back(std::move(c));
  }
  for (auto& rel : tree_relations(r)) {
    TreeCombination c;
    for (auto& [x, v] : rel) c.emplace_back(RT::join(l, x), v);
    out.push_back(std::move(c));
  }
  return out;
}

/// An unrooted tree with a cyclic order of the three edges at every
/// trivalent vertex. Univalent vertices carry labels.
class TreeGraph {
 public:
  struct Vertex {
    int label = 0;           // meaningful for univalent vertices
    std::vector<int> nbrs;   // 1 for leaves, 3 in cyclic order for trivalent
  };

  /// Vertex 0 is the root leaf; body leaves follow in left-to-right order
  /// of their first appearance, interleaved with internal vertices.
  static TreeGraph from_rooted(const RootLabeledTree& t) {
    TreeGraph g;
    g.v_.push_back({t.root, {}});
    int top = g.build(t.body, 0);
    g.v_[0].nbrs.push_back(top);
    return g;
  }

  const std::vector<Vertex>& vertices() const { return v_; }
  std::vector<Vertex>& vertices() { return v_; }

  bool is_leaf(int v) const { return v_[static_cast<std::size_t>(v)].nbrs.size() == 1; }

  /// Leaf vertices in id order.
  std::vector<int> leaves() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (v_[i].nbrs.size() == 1) out.push_back(static_cast<int>(i));
    return out;
  }

  /// The same oriented tree read with `leaf` as the labelled root. At each
  /// trivalent vertex, children are the two edges following the parent edge
  /// in cyclic order.
  RootLabeledTree rooted_at(int leaf) const {
    const Vertex& w = v_.at(static_cast<std::size_t>(leaf));
    if (w.nbrs.size() != 1) throw std::out_of_range("rooted_at: vertex is not a leaf");
    return {w.label, read(w.nbrs[0], leaf)};
  }

  /// Lexicographically least code over all rootings; identifies the
  /// oriented unrooted tree.
  std::string certificate() const {
    std::string best;
    for (int l : leaves()) {
      std::string c = rooted_at(l).code();
      if (best.empty() || c < best) best = c;
    }
    return best;
  }

 private:
  int build(const RootedTree& t, int parent) {
    int id = static_cast<int>(v_.size());
    v_.push_back({t.is_leaf() ? t.label() : 0, {parent}});
    if (!t.is_leaf()) {
      int l = build(t.left(), id);
      int r = build(t.right(), id);
      v_[static_cast<std::size_t>(id)].nbrs.push_back(l);
      v_[static_cast<std::size_t>(id)].nbrs.push_back(r);
    }
    return id;
  }

  RootedTree read(int v, int from) const {
    const Vertex& x = v_[static_cast<std::size_t>(v)];
    if (x.nbrs.size() == 1) return RootedTree::leaf(x.label);
    std::size_t p = 0;
    while (x.nbrs[p] != from) ++p;
    return RootedTree::join(read(x.nbrs[(p + 1) % 3], v), read(x.nbrs[(p + 2) % 3], v));
  }

  std::vector<Vertex> v_;
};

}  // namespace qlie
