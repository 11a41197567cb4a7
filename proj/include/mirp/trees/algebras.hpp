#pragma once

#include <string>
#include <vector>

#include "mirp/trees/tree.hpp"

namespace mirp::trees {

// (T, ↷) graded by node count.
struct GraftingAlgebra {
  using key_type = Tree;
  int labels = 1;

  TreeSeries product(const Tree& a, const Tree& b) const { return graft(a, b); }
  int grade(const Tree& t) const { return t.nodes(); }
  std::string serialize(const Tree& t) const { return to_string(t); }
  int min_grade() const { return 1; }
  std::vector<Tree> basis_of_grade(int g) const { return trees_with_nodes(labels, g); }
};

// Trees with at least two nodes under ⊳_ℓ, graded by node count − 1.
struct TreeInsertionAlgebra {
  using key_type = Tree;
  int labels = 1;
  int label = 0;

  TreeSeries product(const Tree& a, const Tree& b) const { return insertion(label, a, b); }
  int grade(const Tree& t) const { return t.nodes() - 1; }
  std::string serialize(const Tree& t) const { return to_string(t); }
  int min_grade() const { return 1; }
  std::vector<Tree> basis_of_grade(int g) const { return trees_with_nodes(labels, g + 1); }
};

}  // namespace mirp::trees
