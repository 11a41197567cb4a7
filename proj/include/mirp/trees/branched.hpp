#pragma once

#include <vector>

#include "mirp/roughpath/signature.hpp"
#include "mirp/trees/tree.hpp"

namespace mirp::trees {

// X^Br_{st}[τ] for trees with ≤ n nodes, base points s, every grid node t ≥ s.
struct BranchedGrid {
  int n = 0;
  int labels = 0;
  int M = 0;
  double t0 = 0, t1 = 1;
  rp::Quadrature quad = rp::Quadrature::trapezoid;
  std::vector<Tree> trees;  // enumerate_trees(labels, n)
  std::vector<int> bases;
  std::vector<std::vector<std::vector<double>>> data;  // data[b][i][t - bases[b]]

  int tree_index(const Tree& t) const;  // -1 when absent
  int base_index(int s) const;          // throws std::out_of_range
  double value(int s, int t, int tree) const;
  // X̃ = X^Br / σ(τ)
  double normalized(int s, int t, int tree) const;
};

struct BranchedOptions {
  int n = 1;
  rp::Quadrature quad = rp::Quadrature::trapezoid;
  std::vector<int> bases;  // empty: rp::strided_bases(M)
};

// X^Br_{st}[Ξ_ℓ Π 𝓘(τ_j)] = ∫_s^t Π X^Br_{su}[τ_j] dX^ℓ_u, same quadrature as the multi-index hierarchy.
BranchedGrid branched_signature(const rp::Driver& d, const BranchedOptions& opt);

struct DictionaryReport {
  double max_abs = 0;
  // |lhs − rhs| over the largest |X_{s·,β}| of the same base point and β, rows below floor skipped
  double max_rel = 0;
  int s = 0, t = 0;
  MultiIndex beta;     // where max_rel sits
  long long entries = 0;
};

// X_{st,β} against σ(β) Σ_{τ ∈ T_β} X̃_{st}[τ] on the common base points.
DictionaryReport dictionary_check(const rp::SignatureGrid& sig, const BranchedGrid& br, double floor = 1e-12);

}  // namespace mirp::trees
