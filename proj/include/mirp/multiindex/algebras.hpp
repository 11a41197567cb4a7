#pragma once

#include <string>
#include <vector>

#include "mirp/algebra/guin_oudom.hpp"
#include "mirp/multiindex/polynomial.hpp"

namespace mirp::mi {

// (T, D): populated multi-indices with z^β ▷ z^γ = z^β D z^γ, graded by length.
struct TDAlgebra {
  using key_type = MultiIndex;
  int labels = 1;

  Poly product(const MultiIndex& a, const MultiIndex& b) const { return t_prelie(a, b); }
  int grade(const MultiIndex& b) const { return length(b); }
  std::string serialize(const MultiIndex& b) const { return to_string(b); }
  int min_grade() const { return 1; }
  std::vector<MultiIndex> basis_of_grade(int g) const { return populated_of_length(labels, g); }
};

// (T, ⊲_ℓ) for a fixed label.
struct InsertionAlgebra {
  using key_type = MultiIndex;
  int label = 0;
  Poly product(const MultiIndex& a, const MultiIndex& b) const { return insert_prelie(label, a, b); }
};

struct RSymbol {
  MultiIndex gamma;
  int label = 0;
  auto operator<=>(const RSymbol&) const = default;
  bool operator==(const RSymbol&) const = default;
};

std::string to_string(const RSymbol& r);

// r^{(γ,ℓ)} ▷ r^{(γ',ℓ')} from the coefficients of z^γ ⊲_ℓ z^{γ'}.
LinComb<RSymbol> r_prelie(const RSymbol& a, const RSymbol& b);

enum class Flavor { R2, RL, RhatL };

std::string flavor_name(Flavor f);
Flavor parse_flavor(const std::string& s);

struct FlavorSpec {
  Flavor flavor = Flavor::R2;
  LabelSet hat;  // L̂, unused for R2

  static FlavorSpec r2(int labels) { return {Flavor::R2, LabelSet::of(labels, {})}; }
  static FlavorSpec rl(int labels, const std::vector<int>& hat) { return {Flavor::RL, LabelSet::of(labels, hat)}; }
  static FlavorSpec rhat(int labels, const std::vector<int>& hat) { return {Flavor::RhatL, LabelSet::of(labels, hat)}; }

  bool contains(const RSymbol& r) const;
  int grade(const RSymbol& r) const;
  // Grade on monomials making ρ̃ a graded module.
  int module_grade(const MultiIndex& b) const;
  bool operator==(const FlavorSpec&) const = default;
};

// (R, ▷) restricted to one flavor subalgebra. For R_L̂ the graded pieces are
// infinite, so enumeration is capped at length max_length.
struct RAlgebra {
  using key_type = RSymbol;
  int labels = 1;
  FlavorSpec flavor;
  int max_length = 8;

  LinComb<RSymbol> product(const RSymbol& a, const RSymbol& b) const;
  int grade(const RSymbol& r) const { return flavor.grade(r); }
  std::string serialize(const RSymbol& r) const { return to_string(r); }
  int min_grade() const { return 1; }
  std::vector<RSymbol> basis_of_grade(int g) const;
};

// ρ̃(r^{(γ,ℓ)}) = Σ_k (1/k!)(D^k z^γ) ∂_{(ℓ,k)} acting on monomials.
struct TranslationModule {
  using key_type = MultiIndex;
  using lie_key_type = RSymbol;
  FlavorSpec flavor;

  Poly act(const RSymbol& r, const MultiIndex& b) const { return generator_apply(r.gamma, r.label, monomial(b)); }
  int grade(const MultiIndex& b) const { return flavor.module_grade(b); }
};

}  // namespace mirp::mi
