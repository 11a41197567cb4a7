#pragma once

#include <vector>

#include "mirp/roughpath/chen.hpp"

namespace mirp::rp {

struct SewingResult {
  MultiIndex beta;
  int s = 0, t = 0;
  double tol = 0;
  double value = 0;                  // estimate at the deepest level
  // Richardson step on the last two distinct partitions, using the 4^{-d}
  // decay of the increments; an estimate of the continuum limit, not of value.
  double extrapolated = 0;
  std::vector<double> estimates;     // by depth 0..max_depth
  std::vector<double> increments;    // |estimates[d] − estimates[d−1]|, increments[0] = 0
  int required_depth = -1;           // first d ≥ 1 with increment < tol, −1 if none
  bool converged = false;
};

// X_{s,t,β} for ⟨β⟩ = n + 1 from the levels ≤ n of sig alone. With the germ
// F_{uv} = (I ≠ 0 part of ρ_D(exp_D(X_{s₀u})) X_{uv})_β for a base point s₀ ≤ s,
// X_{s,t,β} = lim Σ_{[u,v] ∈ P_d} F_{uv} − F_{st} over dyadic partitions P_d of
// [s,t] (nodes rounded to the grid). Values of sig at level n + 1 and above are ignored.
SewingResult extend_level(const SignatureGrid& sig, const MultiIndex& beta, int s, int t, int max_depth, double tol);

// Smallest d ≥ 1 whose increment is below tol, or −1.
int required_depth(const SewingResult& r, double tol);

}  // namespace mirp::rp
