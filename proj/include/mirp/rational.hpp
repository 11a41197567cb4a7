#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mirp {

using Rational = mpq_class;

inline Rational factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

// Correctly rounded when numerator and denominator are exact doubles,
// which covers every structure constant this library produces.
inline double to_double(const Rational& q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 53 && mpz_sizeinbase(d.get_mpz_t(), 2) <= 53)
    return n.get_d() / d.get_d();
  return q.get_d();
}

inline Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite coefficient");
  return Rational(x);
}

inline std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace mirp
