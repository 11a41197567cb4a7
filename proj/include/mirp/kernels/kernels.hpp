#pragma once

#include <cstddef>
#include <string>

// Elementwise float kernels for the quadrature loops. Every variant performs
// the same operations in the same order per element, so results are
// bit-identical across instruction sets.
namespace mirp::kernels {

enum class Isa { scalar, avx2 };

struct KernelSet {
  Isa isa;
  // out[i] = a[i] * b[i]
  void (*multiply)(double* out, const double* a, const double* b, std::size_t n);
  // out[i] += (c * a[i]) * b[i]
  void (*multiply_accumulate)(double* out, double c, const double* a, const double* b, std::size_t n);
  // out[i] += c * a[i]
  void (*axpy)(double* out, double c, const double* a, std::size_t n);
  // out[i] += (0.5 * (g[i] + g[i+1])) * (x[i+1] - x[i]), for i < n
  void (*trapezoid_increments)(double* out, const double* g, const double* x, std::size_t n);
};

const KernelSet& scalar_kernels();
// Null when the build or the CPU lacks AVX2.
const KernelSet* avx2_kernels();

// The best set the CPU supports, unless MIRP_ISA=scalar is set.
const KernelSet& active();
bool cpu_has_avx2();
std::string isa_name(Isa isa);

}  // namespace mirp::kernels
