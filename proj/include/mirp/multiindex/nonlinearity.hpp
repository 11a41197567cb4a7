#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mirp/multiindex/multiindex.hpp"

namespace mirp::mi {

// Σ c_i y^i
struct PolynomialFn {
  std::vector<double> coeffs;
};
// amp · sin(freq · y + phase)
struct SineFn {
  double amp = 1, freq = 1, phase = 0;
};
// amp · exp(rate · y)
struct ExpFn {
  double amp = 1, rate = 1;
};

// A scalar function with a closed-form derivative tower.
class ScalarFunction {
 public:
  using Repr = std::variant<PolynomialFn, SineFn, ExpFn>;
  ScalarFunction(Repr r) : repr_(std::move(r)) {}

  // (1/k!) f^{(k)}(y)
  double taylor(int k, double y) const;
  double operator()(double y) const { return taylor(0, y); }
  const Repr& repr() const { return repr_; }

 private:
  Repr repr_;
};

// One vector field a_ℓ per label.
struct Nonlinearity {
  std::vector<ScalarFunction> fields;

  double taylor(int label, int k, double y) const;
};

// Π_{(ℓ,k)} ((1/k!) a_ℓ^{(k)}(y))^{β(ℓ,k)}
double z_functional(const MultiIndex& b, const Nonlinearity& a, double y);

}  // namespace mirp::mi
