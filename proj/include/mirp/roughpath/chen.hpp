#pragma once

#include <utility>
#include <vector>

#include "mirp/roughpath/signature.hpp"

namespace mirp::rp {

// One term coef · x^I · y_γ of (ρ_D(exp_D(x)) y)_β. Factors are (β index, multiplicity).
struct ChenTerm {
  std::vector<std::pair<int, int>> factors;
  int gamma = 0;
  double coef = 0;
};

// ρ_D(exp_D(x)) on populated monomials of length ≤ N, computed exactly in the
// (T,D) Guin–Oudom engine and converted to binary64 once.
class ChenTable {
 public:
  ChenTable(int labels, int N);

  int labels() const { return labels_; }
  int N() const { return N_; }
  const std::vector<MultiIndex>& betas() const { return betas_; }
  // rows()[β]: every term, the identity term (I = 0, γ = β) first.
  const std::vector<std::vector<ChenTerm>>& rows() const { return rows_; }

  // (ρ_D(exp_D(x)) y)_β for every β.
  std::vector<double> apply(const std::vector<double>& x, const std::vector<double>& y) const;
  // x_β + (ρ_D(exp_D(x)) y)_β: the increment over [s,t] from those over [s,u] and [u,t].
  std::vector<double> concatenate(const std::vector<double>& x, const std::vector<double>& y) const;
  // y with concatenate(x, y) = z, solved level by level.
  std::vector<double> solve_right(const std::vector<double>& x, const std::vector<double>& z) const;
  // The I ≠ 0 part of apply for row β only.
  double correction(int beta, const std::vector<double>& x, const std::vector<double>& y) const;

 private:
  double term(const ChenTerm& t, const std::vector<double>& x, const std::vector<double>& y) const;

  int labels_, N_;
  std::vector<MultiIndex> betas_;
  std::vector<std::vector<ChenTerm>> rows_;
};

// X_{s,t,β} − X_{s,u,β} − (ρ_D(exp_D(X_{s,u})) X_{u,t})_β; s and u must be base points.
std::vector<double> chen_defect(const SignatureGrid& sig, const ChenTable& table, int s, int u, int t);

// X_{u,v} for any grid pair u ≤ v: read directly when u is a base point,
// otherwise recovered by Chen from the nearest base point below u.
std::vector<double> pair_values(const SignatureGrid& sig, const ChenTable& table, int u, int v);

struct ChenReport {
  double max_defect = 0;
  int s = 0, u = 0, t = 0;      // where the maximum sits
  MultiIndex beta;
  std::vector<double> max_by_level;  // index ⟨β⟩ − 1
  int triples = 0;
};

// Max |defect| over all base triples s < u < t.
ChenReport chen_report(const SignatureGrid& sig, const ChenTable& table);

}  // namespace mirp::rp
