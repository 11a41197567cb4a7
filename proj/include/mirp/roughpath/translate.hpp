#pragma once

#include "mirp/multiindex/translation.hpp"
#include "mirp/roughpath/chen.hpp"

namespace mirp::rp {

// T_c on populated monomials of length ≤ N, as a dense binary64 matrix
// (entry[row][col]) converted once from the exact rational one.
struct TranslationMatrix {
  std::vector<MultiIndex> betas;
  std::vector<std::vector<double>> entry;

  static TranslationMatrix from_exact(const algebra::Endo<MultiIndex>& e, const std::vector<MultiIndex>& betas);
  static TranslationMatrix build(const mi::TranslationSpec& spec, int N);
};

// (T_c X)_{β'} = Σ_β (T_c)_{β'}^{β} X_β for every stored pair.
SignatureGrid translate(const SignatureGrid& sig, const TranslationMatrix& T);
SignatureGrid translate(const SignatureGrid& sig, const mi::TranslationSpec& spec);

// Y_{st,β} = Σ_ℓ ∫_s^t [z^β] ρ_D(exp_D(Y_{su}))(z_{(ℓ,0)} + c_ℓ) dX^ℓ_u, integrated
// directly with the same quadrature and base points as sig.
SignatureGrid translated_hierarchy(const Driver& d, const mi::TranslationSpec& spec, const SignatureOptions& opt);

struct HierarchyCheck {
  double max_discrepancy = 0;
  int s = 0, t = 0;
  MultiIndex beta;
};

// Max |translate(build_signature(d)) − translated_hierarchy(d)| over β and stored pairs.
HierarchyCheck translated_hierarchy_check(const Driver& d, const mi::TranslationSpec& spec, const SignatureOptions& opt);

}  // namespace mirp::rp
