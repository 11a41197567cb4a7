#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "mirp/lincomb.hpp"
#include "mirp/multiindex/multiindex.hpp"

namespace mirp::trees {

using mi::MultiIndex;

// Ξ_ℓ Π 𝓘(τ_j), children kept sorted by (node count, key).
class Tree {
 public:
  explicit Tree(int label = 0, std::vector<Tree> children = {});

  static Tree leaf(int label) { return Tree(label); }

  int label() const { return label_; }
  const std::vector<Tree>& children() const { return children_; }
  int nodes() const { return nodes_; }
  const std::string& key() const { return key_; }
  int max_label() const;

  std::strong_ordering operator<=>(const Tree& o) const {
    if (auto c = nodes_ <=> o.nodes_; c != 0) return c;
    return key_ <=> o.key_;
  }
  bool operator==(const Tree& o) const { return key_ == o.key_; }

 private:
  int label_;
  std::vector<Tree> children_;
  int nodes_;
  std::string key_;
};

using TreeSeries = LinComb<Tree>;

// "ℓ" for a leaf, "ℓ[c1,c2,…]" otherwise, children in canonical order.
std::string to_string(const Tree& t);
Tree parse_tree(const std::string& s);

// σ(τ) = I! Π σ(τ_j).
Rational symmetry_factor(const Tree& t);
// β(ℓ,k) = number of ℓ-nodes with k children.
MultiIndex fertility(const Tree& t);

// All trees with 1..max_nodes nodes and labels 0..labels−1, by node count, then key.
std::vector<Tree> enumerate_trees(int labels, int max_nodes);
std::vector<Tree> trees_with_nodes(int labels, int n);

// τ' ↷ τ: τ' attached below each node of τ in turn.
TreeSeries graft(const Tree& tp, const Tree& t);
TreeSeries graft(const TreeSeries& a, const TreeSeries& b);

// ρ_↷(τ_1 ⋄ … ⋄ τ_k) τ: every way of attaching all τ_j below nodes of τ.
TreeSeries simultaneous_graft(const std::vector<Tree>& grafted, const Tree& t);

// τ' ⊳_ℓ τ by the recursion on the root of τ.
TreeSeries insertion(int label, const Tree& tp, const Tree& t);
TreeSeries insertion(int label, const TreeSeries& a, const TreeSeries& b);

// Ψ[τ] = σ(β) z^β with β the fertility of τ.
std::pair<Rational, MultiIndex> psi(const Tree& t);
mi::Poly psi(const TreeSeries& s);

// T_β: every tree whose fertility is β, in canonical order.
std::vector<Tree> fertility_class(const MultiIndex& beta);

}  // namespace mirp::trees
