#include "mirp/kernels/kernels.hpp"

namespace mirp::kernels {

namespace {

void multiply(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void multiply_accumulate(double* out, double c, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += (c * a[i]) * b[i];
}

void axpy(double* out, double c, const double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += c * a[i];
}

void trapezoid_increments(double* out, const double* g, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += (0.5 * (g[i] + g[i + 1])) * (x[i + 1] - x[i]);
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{Isa::scalar, multiply, multiply_accumulate, axpy, trapezoid_increments};
  return set;
}

}  // namespace mirp::kernels
