#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mirp/roughpath/signature.hpp"

namespace mirp::rp {

// dyadic: t − s = 2^j and t = M; all: every t > s; random:k: k draws of t > s per base point.
struct PairPolicy {
  enum class Kind { dyadic, all, random };
  Kind kind = Kind::dyadic;
  int count = 0;
  std::uint64_t seed = 0;

  static PairPolicy parse(const std::string& s, std::uint64_t seed = 0);
  std::string name() const;
};

// (s, t) with s a base point of sig and s < t ≤ M, sorted.
std::vector<std::pair<int, int>> sample_pairs(const SignatureGrid& sig, const PairPolicy& policy);

// exponent(β) = Σ_ℓ α_ℓ Σ_k β(ℓ,k), with α_ℓ = alpha unless overridden; the
// overrides on L̂ give the mixed |β|_L̂.
struct HolderExponent {
  double alpha = 1;
  std::map<int, double> label_alpha;

  double operator()(const MultiIndex& beta) const;
};

struct HolderRow {
  MultiIndex beta;
  double exponent = 0;
  double sup = 0;
  int s = 0, t = 0;  // where the sup sits
};

// Per β, sup over the pairs of |X_{s,t,β}| / |t − s|^{exponent(β)}.
std::vector<HolderRow> holder_report(const SignatureGrid& sig, const HolderExponent& e,
                                     const std::vector<std::pair<int, int>>& pairs);

}  // namespace mirp::rp
