#pragma once

#include <random>
#include <vector>

#include "mirp/lincomb.hpp"
#include "mirp/multiset.hpp"

namespace testing_support {

using mirp::LinComb;
using mirp::Multiset;
using mirp::Rational;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rational small_rational() {
  int num = uniform(-5, 5);
  while (num == 0) num = uniform(-5, 5);
  Rational r(num, uniform(1, 4));
  r.canonicalize();
  return r;
}

template <class K>
const K& pick(const std::vector<K>& v) {
  return v[uniform(0, static_cast<int>(v.size()) - 1)];
}

template <class K>
LinComb<K> random_series(const std::vector<K>& basis, double density = 0.6) {
  LinComb<K> s;
  std::bernoulli_distribution keep(density);
  for (const auto& k : basis)
    if (keep(rng())) s.add(k, small_rational());
  if (s.empty()) s.add(pick(basis), small_rational());
  return s;
}

}  // namespace testing_support
