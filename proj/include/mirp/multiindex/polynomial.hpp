#pragma once

#include "mirp/multiindex/multiindex.hpp"

namespace mirp::mi {

inline Poly monomial(const MultiIndex& b, const Rational& c = 1) { return Poly(b, c); }

Poly multiply(const Poly& p, const Poly& q);

// D = Σ (k+1) z_{(ℓ,k+1)} ∂_{z_{(ℓ,k)}}
Poly d_derivation(const Poly& p);
Poly d_power(const Poly& p, int k);

Poly partial(const Poly& p, Node n);

// Σ_k (1/k!) (D^k z^γ) ∂_{(ℓ,k)} applied to p.
Poly generator_apply(const MultiIndex& gamma, int label, const Poly& p);

// z^β D z^γ on populated β, γ.
Poly t_prelie(const MultiIndex& beta, const MultiIndex& gamma);

// z^β ⊲_ℓ z^γ on populated β, γ.
Poly insert_prelie(int label, const MultiIndex& beta, const MultiIndex& gamma);

}  // namespace mirp::mi
