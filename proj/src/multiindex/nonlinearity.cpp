#include "mirp/multiindex/nonlinearity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mirp::mi {

namespace {

double inv_factorial(int k) {
  double r = 1;
  for (int i = 2; i <= k; ++i) r /= i;
  return r;
}

}  // namespace

double ScalarFunction::taylor(int k, double y) const {
  if (k < 0) throw std::invalid_argument("negative derivative order");
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PolynomialFn>) {
          // Σ_i binom(i,k) c_i y^{i−k}, evaluated by Horner.
          double acc = 0;
          const int n = static_cast<int>(f.coeffs.size());
          for (int i = n - 1; i >= k; --i) {
            double binom = 1;
            for (int j = 1; j <= k; ++j) binom = binom * (i - k + j) / j;
            acc = acc * y + binom * f.coeffs[i];
          }
          return acc;
        } else if constexpr (std::is_same_v<T, SineFn>) {
          const double arg = f.freq * y + f.phase + k * std::numbers::pi / 2;
          return f.amp * std::pow(f.freq, k) * std::sin(arg) * inv_factorial(k);
        } else {
          return f.amp * std::pow(f.rate, k) * std::exp(f.rate * y) * inv_factorial(k);
        }
      },
      repr_);
}

double Nonlinearity::taylor(int label, int k, double y) const {
  if (label < 0 || label >= static_cast<int>(fields.size()))
    throw std::out_of_range("no vector field for label " + std::to_string(label));
  return fields[label].taylor(k, y);
}

double z_functional(const MultiIndex& b, const Nonlinearity& a, double y) {
  double r = 1;
  for (const auto& [n, m] : b) r *= std::pow(a.taylor(n.label, n.k, y), m);
  return r;
}

}  // namespace mirp::mi
