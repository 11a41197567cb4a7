#include "mirp/multiindex/polynomial.hpp"

#include <stdexcept>

namespace mirp::mi {

namespace {

void require_populated(const MultiIndex& b) {
  if (!is_populated(b)) throw std::invalid_argument("multi-index is not populated: " + to_string(b));
}

}  // namespace

Poly multiply(const Poly& p, const Poly& q) {
  return bilinear(p, q, [](const MultiIndex& a, const MultiIndex& b) { return Poly(a + b); });
}

Poly d_derivation(const Poly& p) {
  Poly out;
  for (const auto& [b, c] : p)
    for (const auto& [n, m] : b) {
      MultiIndex r = b;
      r.add(n, -1);
      r.add(Node{n.label, n.k + 1});
      out.add(r, c * (n.k + 1) * m);
    }
  return out;
}

Poly d_power(const Poly& p, int k) {
  Poly r = p;
  for (int i = 0; i < k; ++i) r = d_derivation(r);
  return r;
}

Poly partial(const Poly& p, Node n) {
  Poly out;
  for (const auto& [b, c] : p) {
    const int m = b.count(n);
    if (!m) continue;
    MultiIndex r = b;
    r.add(n, -1);
    out.add(r, c * m);
  }
  return out;
}

Poly generator_apply(const MultiIndex& gamma, int label, const Poly& p) {
  int kmax = -1;
  for (const auto& [b, c] : p)
    for (const auto& [n, m] : b)
      if (n.label == label) kmax = std::max(kmax, n.k);
  Poly out;
  Poly dk = monomial(gamma);
  for (int k = 0; k <= kmax; ++k) {
    if (k) dk = d_derivation(dk);
    Poly del = partial(p, Node{label, k});
    if (del.empty()) continue;
    out.add_scaled(multiply(dk, del), Rational(1) / factorial(k));
  }
  return out;
}

Poly t_prelie(const MultiIndex& beta, const MultiIndex& gamma) {
  require_populated(beta);
  require_populated(gamma);
  return multiply(monomial(beta), d_derivation(monomial(gamma)));
}

Poly insert_prelie(int label, const MultiIndex& beta, const MultiIndex& gamma) {
  require_populated(beta);
  require_populated(gamma);
  return generator_apply(beta, label, monomial(gamma));
}

}  // namespace mirp::mi
