// Compiled with -mavx2 only; reached through runtime dispatch.
#include <immintrin.h>

#include "mirp/kernels/kernels.hpp"

namespace mirp::kernels {

namespace {

void multiply(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void multiply_accumulate(double* out, double c, const double* a, const double* b, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(_mm256_mul_pd(vc, _mm256_loadu_pd(a + i)), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), t));
  }
  for (; i < n; ++i) out[i] += (c * a[i]) * b[i];
}

void axpy(double* out, double c, const double* a, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), _mm256_mul_pd(vc, _mm256_loadu_pd(a + i))));
  for (; i < n; ++i) out[i] += c * a[i];
}

void trapezoid_increments(double* out, const double* g, const double* x, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d avg = _mm256_mul_pd(half, _mm256_add_pd(_mm256_loadu_pd(g + i), _mm256_loadu_pd(g + i + 1)));
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), _mm256_mul_pd(avg, dx)));
  }
  for (; i < n; ++i) out[i] += (0.5 * (g[i] + g[i + 1])) * (x[i + 1] - x[i]);
}

}  // namespace

const KernelSet& avx2_kernel_set() {
  static const KernelSet set{Isa::avx2, multiply, multiply_accumulate, axpy, trapezoid_increments};
  return set;
}

}  // namespace mirp::kernels
