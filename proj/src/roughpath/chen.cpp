#include "mirp/roughpath/chen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mirp/multiindex/algebras.hpp"

namespace mirp::rp {

ChenTable::ChenTable(int labels, int N) : labels_(labels), N_(N), betas_(signature_betas(labels, N)) {
  algebra::GuinOudom<mi::TDAlgebra> go(mi::TDAlgebra{labels});
  auto index = [&](const MultiIndex& b) {
    auto it = std::find(betas_.begin(), betas_.end(), b);
    if (it == betas_.end()) throw std::logic_error("Chen table produced a term outside the basis: " + mi::to_string(b));
    return static_cast<int>(it - betas_.begin());
  };
  auto len = [](const MultiIndex& b) { return mi::length(b); };
  rows_.assign(betas_.size(), {});
  for (std::size_t g = 0; g < betas_.size(); ++g) {
    const int room = N - mi::length(betas_[g]);
    for (const auto& I : algebra::multisets_by_degree(betas_, len, 0, room)) {
      ChenTerm proto;
      proto.gamma = static_cast<int>(g);
      for (const auto& [b, m] : I) proto.factors.emplace_back(index(b), m);
      for (const auto& [b, c] : go.rho_apply(I, mi::Poly(betas_[g]))) {
        ChenTerm t = proto;
        t.coef = c.get_d();
        auto& row = rows_[index(b)];
        if (I.empty())
          row.insert(row.begin(), std::move(t));
        else
          row.push_back(std::move(t));
      }
    }
  }
}

double ChenTable::term(const ChenTerm& t, const std::vector<double>& x, const std::vector<double>& y) const {
  double v = t.coef;
  for (const auto& [i, m] : t.factors)
    for (int j = 0; j < m; ++j) v *= x[i];
  return v * y[t.gamma];
}

std::vector<double> ChenTable::apply(const std::vector<double>& x, const std::vector<double>& y) const {
  std::vector<double> out(rows_.size(), 0.0);
  for (std::size_t b = 0; b < rows_.size(); ++b)
    for (const auto& t : rows_[b]) out[b] += term(t, x, y);
  return out;
}

std::vector<double> ChenTable::concatenate(const std::vector<double>& x, const std::vector<double>& y) const {
  std::vector<double> out = apply(x, y);
  for (std::size_t b = 0; b < out.size(); ++b) out[b] = x[b] + out[b];
  return out;
}

double ChenTable::correction(int beta, const std::vector<double>& x, const std::vector<double>& y) const {
  double v = 0;
  for (const auto& t : rows_[beta])
    if (!t.factors.empty()) v += term(t, x, y);
  return v;
}

std::vector<double> ChenTable::solve_right(const std::vector<double>& x, const std::vector<double>& z) const {
  // Terms with I ≠ 0 only involve shorter γ, which are already solved.
  std::vector<double> y(rows_.size(), 0.0);
  for (std::size_t b = 0; b < rows_.size(); ++b) y[b] = z[b] - x[b] - correction(static_cast<int>(b), x, y);
  return y;
}

namespace {

void check_table(const SignatureGrid& sig, const ChenTable& table) {
  if (sig.labels != table.labels() || sig.N != table.N())
    throw std::invalid_argument("Chen table does not match the signature's labels and truncation");
}

}  // namespace

std::vector<double> chen_defect(const SignatureGrid& sig, const ChenTable& table, int s, int u, int t) {
  check_table(sig, table);
  if (!(s <= u && u <= t)) throw std::invalid_argument("Chen defect needs s <= u <= t");
  const auto xst = sig.at(s, t), xsu = sig.at(s, u), xut = sig.at(u, t);
  const auto rhs = table.concatenate(xsu, xut);
  std::vector<double> out(xst.size());
  for (std::size_t b = 0; b < out.size(); ++b) out[b] = xst[b] - rhs[b];
  return out;
}

std::vector<double> pair_values(const SignatureGrid& sig, const ChenTable& table, int u, int v) {
  check_table(sig, table);
  if (u > v) throw std::invalid_argument("pair needs u <= v");
  if (sig.has_base(u)) return sig.at(u, v);
  auto it = std::upper_bound(sig.bases.begin(), sig.bases.end(), u);
  if (it == sig.bases.begin()) throw std::out_of_range("no base point at or below node " + std::to_string(u));
  const int s = *std::prev(it);
  return table.solve_right(sig.at(s, u), sig.at(s, v));
}

ChenReport chen_report(const SignatureGrid& sig, const ChenTable& table) {
  ChenReport r;
  r.max_by_level.assign(sig.N, 0.0);
  const auto& B = sig.bases;
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j)
      for (std::size_t k = j + 1; k < B.size(); ++k) {
        const auto d = chen_defect(sig, table, B[i], B[j], B[k]);
        ++r.triples;
        for (std::size_t b = 0; b < d.size(); ++b) {
          const double a = std::abs(d[b]);
          double& lv = r.max_by_level[mi::length(sig.betas[b]) - 1];
          lv = std::max(lv, a);
          if (a > r.max_defect) {
            r.max_defect = a;
            r.s = B[i];
            r.u = B[j];
            r.t = B[k];
            r.beta = sig.betas[b];
          }
        }
      }
  return r;
}

}  // namespace mirp::rp
