#include "mirp/roughpath/sewing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mirp::rp {

SewingResult extend_level(const SignatureGrid& sig, const MultiIndex& beta, int s, int t, int max_depth, double tol) {
  const int n = mi::length(beta) - 1;
  if (!mi::is_populated(beta)) throw std::invalid_argument("sewing target " + mi::to_string(beta) + " is not populated");
  if (n < 1) throw std::invalid_argument("sewing needs a target of length at least 2");
  if (sig.N < n)
    throw std::invalid_argument("signature has levels <= " + std::to_string(sig.N) + ", sewing " +
                                mi::to_string(beta) + " needs levels <= " + std::to_string(n));
  if (s < 0 || t > sig.M || s > t) throw std::invalid_argument("sewing pair must satisfy 0 <= s <= t <= M");
  if (max_depth < 0 || max_depth > 30) throw std::invalid_argument("sewing depth must be in [0, 30]");

  auto it = std::upper_bound(sig.bases.begin(), sig.bases.end(), s);
  if (it == sig.bases.begin()) throw std::out_of_range("no base point at or below node " + std::to_string(s));
  const int s0 = *std::prev(it);

  ChenTable table(sig.labels, n + 1);
  const auto& tb = table.betas();
  const int row = static_cast<int>(std::find(tb.begin(), tb.end(), beta) - tb.begin());
  // Levels ≤ n of X_{s₀,u}, padded to the table's basis.
  std::map<int, std::vector<double>> from_base;
  auto base_to = [&](int u) -> const std::vector<double>& {
    auto f = from_base.find(u);
    if (f != from_base.end()) return f->second;
    std::vector<double> v(tb.size(), 0.0);
    for (std::size_t i = 0; i < tb.size() && mi::length(tb[i]) <= n; ++i) v[i] = sig.value(s0, u, static_cast<int>(i));
    return from_base.emplace(u, std::move(v)).first->second;
  };
  auto germ = [&](int u, int v) {
    const auto& x = base_to(u);
    auto y = table.solve_right(x, base_to(v));
    return table.correction(row, x, y);
  };

  SewingResult r;
  r.beta = beta;
  r.s = s;
  r.t = t;
  r.tol = tol;
  const double fst = germ(s, t);
  for (int d = 0; d <= max_depth; ++d) {
    const long long parts = 1LL << d;
    double sum = 0;
    int prev = s;
    for (long long i = 1; i <= parts; ++i) {
      const int node = s + static_cast<int>((static_cast<long long>(t - s) * i * 2 + parts) / (2 * parts));
      if (node == prev) continue;
      sum += germ(prev, node);
      prev = node;
    }
    r.estimates.push_back(sum - fst);
    r.increments.push_back(d == 0 ? 0.0 : std::abs(r.estimates[d] - r.estimates[d - 1]));
  }
  r.value = r.estimates.back();
  int last = max_depth;
  while (last > 0 && r.increments[last] == 0.0) --last;
  r.extrapolated = last > 0 ? r.estimates[last] + (r.estimates[last] - r.estimates[last - 1]) / 3 : r.value;
  r.required_depth = required_depth(r, tol);
  r.converged = r.required_depth >= 0;
  return r;
}

int required_depth(const SewingResult& r, double tol) {
  for (std::size_t d = 1; d < r.increments.size(); ++d)
    if (r.increments[d] < tol) return static_cast<int>(d);
  return -1;
}

}  // namespace mirp::rp
