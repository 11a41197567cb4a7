#pragma once

#include <memory>

#include "mirp/algebra/guin_oudom.hpp"
#include "mirp/multiindex/algebras.hpp"

namespace mirp::mi {

// Coefficients c_{(γ,ℓ)} of a Lie series in one flavor of (R, ▷), with ⟨γ⟩ ≤ bound.
struct TranslationSpec {
  int labels = 1;
  FlavorSpec flavor;
  int bound = 1;
  LinComb<RSymbol> c;

  // Throws std::invalid_argument on a flavor or bound violation.
  void validate() const;
  // c_ℓ = Σ_γ c_{(γ,ℓ)} z^γ
  Poly c_label(int label) const;
};

// T_c = ρ̃(exp(c)) for one flavor, backed by a Guin–Oudom engine on (R, ▷).
class Translator {
 public:
  Translator(int labels, FlavorSpec flavor, int max_length);

  const FlavorSpec& flavor() const { return flavor_; }
  algebra::GuinOudom<RAlgebra>& engine() { return *engine_; }

  // Exact image of a polynomial; finite because GO elements of length l
  // act as differential operators of order l.
  Poly apply(const LinComb<RSymbol>& c, const Poly& p);

  // Same map summed over GO words; slow, kept as a reference.
  Poly apply_direct(const LinComb<RSymbol>& c, const Poly& p);

  // Columns: populated monomials of length ≤ N; rows kept up to length N.
  algebra::Endo<MultiIndex> matrix(const LinComb<RSymbol>& c, int N);

  // c'' with T_{c''} = T_{after} ∘ T_{before} on monomials of length ≤ N.
  LinComb<RSymbol> compose(const LinComb<RSymbol>& after, const LinComb<RSymbol>& before, int N);

 private:
  void check(const LinComb<RSymbol>& c) const;
  int grade_bound(int N) const;
  int max_grade(const LinComb<RSymbol>& c) const;
  Poly apply_monomial(const LinComb<RSymbol>& c, const MultiIndex& b, int bound);

  int labels_;
  FlavorSpec flavor_;
  std::unique_ptr<algebra::GuinOudom<RAlgebra>> engine_;
};

algebra::Endo<MultiIndex> rho_tilde_exp(const TranslationSpec& spec, int N);

}  // namespace mirp::mi
