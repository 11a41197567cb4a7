#include "mirp/multiindex/translation.hpp"

#include <stdexcept>

#include "mirp/multiindex/polynomial.hpp"

namespace mirp::mi {

void TranslationSpec::validate() const {
  for (const auto& [r, v] : c) {
    if (!flavor.contains(r))
      throw std::invalid_argument("symbol " + to_string(r) + " is not in the " + flavor_name(flavor.flavor) +
                                  " flavor");
    if (length(r.gamma) > bound)
      throw std::invalid_argument("symbol " + to_string(r) + " exceeds the length bound " + std::to_string(bound));
  }
}

Poly TranslationSpec::c_label(int label) const {
  Poly p;
  for (const auto& [r, v] : c)
    if (r.label == label) p.add(r.gamma, v);
  return p;
}

Translator::Translator(int labels, FlavorSpec flavor, int max_length)
    : labels_(labels),
      flavor_(flavor),
      engine_(std::make_unique<algebra::GuinOudom<RAlgebra>>(RAlgebra{labels, flavor, max_length})) {}

void Translator::check(const LinComb<RSymbol>& c) const {
  for (const auto& [r, v] : c)
    if (!flavor_.contains(r))
      throw std::invalid_argument("symbol " + to_string(r) + " is not in the " + flavor_name(flavor_.flavor) +
                                  " flavor");
}

int Translator::grade_bound(int N) const { return flavor_.flavor == Flavor::R2 ? N - 1 : N; }

int Translator::max_grade(const LinComb<RSymbol>& c) const {
  int maxg = 0;
  for (const auto& [r, v] : c) maxg = std::max(maxg, flavor_.grade(r));
  return maxg;
}

// A_I acts as a differential operator of order |I|, so |I| ≤ length(b).
Poly Translator::apply_monomial(const LinComb<RSymbol>& c, const MultiIndex& b, int bound) {
  TranslationModule mod{flavor_};
  return algebra::coaction_apply(*engine_, mod, algebra::Character<RSymbol>{0, c}, Poly(b), bound, length(b));
}

Poly Translator::apply(const LinComb<RSymbol>& c, const Poly& p) {
  check(c);
  const int maxg = max_grade(c);
  Poly out;
  for (const auto& [b, v] : p) out.add_scaled(apply_monomial(c, b, flavor_.module_grade(b) + length(b) * maxg), v);
  return out;
}

Poly Translator::apply_direct(const LinComb<RSymbol>& c, const Poly& p) {
  check(c);
  const int maxg = max_grade(c);
  TranslationModule mod{flavor_};
  algebra::Character<RSymbol> F{0, c};
  Poly out;
  for (const auto& [b, v] : p) {
    const int bound = mod.grade(b) + length(b) * maxg;
    out.add_scaled(algebra::coaction_apply_words(*engine_, mod, F, Poly(b), bound), v);
  }
  return out;
}

algebra::Endo<MultiIndex> Translator::matrix(const LinComb<RSymbol>& c, int N) {
  check(c);
  algebra::Endo<MultiIndex> e;
  const int maxg = max_grade(c);
  for (const auto& b : enumerate_populated(labels_, N)) {
    // In R2 a symbol raises the length by its grade; otherwise the module
    // grade never exceeds the length.
    const int mg = flavor_.module_grade(b);
    const int bound = flavor_.flavor == Flavor::R2 ? mg + N - length(b) : std::min(N, mg + length(b) * maxg);
    Poly col = apply_monomial(c, b, bound);
    Poly kept;
    for (const auto& [r, v] : col)
      if (length(r) <= N) kept.add(r, v);
    e.set_column(b, std::move(kept));
  }
  return e;
}

LinComb<RSymbol> Translator::compose(const LinComb<RSymbol>& after, const LinComb<RSymbol>& before, int N) {
  check(after);
  check(before);
  const int g = grade_bound(N);
  auto trunc = [&](const LinComb<RSymbol>& c) {
    LinComb<RSymbol> out;
    for (const auto& [r, v] : c)
      if (flavor_.grade(r) <= g) out.add(r, v);
    return out;
  };
  return algebra::bch_compose(*engine_, trunc(after), trunc(before), g);
}

algebra::Endo<MultiIndex> rho_tilde_exp(const TranslationSpec& spec, int N) {
  spec.validate();
  Translator t(spec.labels, spec.flavor, std::max(N, spec.bound));
  return t.matrix(spec.c, N);
}

}  // namespace mirp::mi
