#pragma once

#include <vector>

#include "mirp/multiindex/algebras.hpp"
#include "mirp/multiindex/nonlinearity.hpp"
#include "mirp/trees/tree.hpp"

namespace mirp::trees {

// M_v Ξ_ℓ = Ξ_ℓ + v_ℓ, extended as a pre-Lie morphism of (T, ↷):
// M_v(Ξ_ℓ Π 𝓘(τ_j)) = ρ_↷(M_v τ_1 ⋄ … ⋄ M_v τ_k)(Ξ_ℓ + v_ℓ). v has one entry per label.
TreeSeries tree_translate(const std::vector<TreeSeries>& v, const Tree& t);
TreeSeries tree_translate(const std::vector<TreeSeries>& v, const TreeSeries& s);

// Ψ[v] = Σ_ℓ Σ_τ v_ℓ(τ) σ(β_τ) r^{(β_τ, ℓ)}
LinComb<mi::RSymbol> psi_translation(const std::vector<TreeSeries>& v);

// τ[a, y] = a_ℓ^{(k)}(y) Π τ_j[a, y], with k the number of children of the root.
double elementary_differential(const Tree& t, const mi::Nonlinearity& a, double y);

}  // namespace mirp::trees
