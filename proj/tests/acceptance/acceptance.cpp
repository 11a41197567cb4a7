// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "../oracles/tree_oracles.hpp"
#include "../unit/support.hpp"
#include "mirp/algebra/guin_oudom.hpp"
#include "mirp/algebra/prelie.hpp"
#include "mirp/multiindex/algebras.hpp"
#include "mirp/multiindex/polynomial.hpp"
#include "mirp/multiindex/translation.hpp"
#include "mirp/roughpath/chen.hpp"
#include "mirp/roughpath/sewing.hpp"
#include "mirp/roughpath/translate.hpp"
#include "mirp/trees/algebras.hpp"
#include "mirp/trees/branched.hpp"
#include "mirp/trees/expansion.hpp"
#include "mirp/trees/maps.hpp"

using namespace mirp;
using mi::MultiIndex;
using trees::Tree;
using trees::TreeSeries;

using testing_support::pick;
using testing_support::random_series;
using testing_support::small_rational;
using testing_support::uniform;

namespace {

// Collects failures of individual checks within one criterion.
struct Tally {
  long checks = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 8) failures.push_back(what);
    if (!ok && failures.size() == 8) failures.push_back("...");
  }
  void note(const std::string& s) { notes.push_back(s); }
  bool pass() const { return failures.empty(); }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---- 1: exact algebra suite ----

// Remembers products of basis pairs; the defects of many triples share them.
template <class A>
struct Cached {
  using key_type = typename A::key_type;
  const A& alg;
  mutable std::map<std::pair<key_type, key_type>, LinComb<key_type>> memo;

  const LinComb<key_type>& product(const key_type& a, const key_type& b) const {
    auto it = memo.find({a, b});
    if (it == memo.end()) it = memo.emplace(std::pair{a, b}, LinComb<key_type>(alg.product(a, b))).first;
    return it->second;
  }
};

template <class A, class K>
void prelie_triples(Tally& t, const A& alg, const std::vector<K>& basis, const std::function<int(const K&)>& size,
                    int max_total, const std::string& name, bool novikov = false) {
  const Cached<A> cached{alg, {}};
  for (const auto& a : basis)
    for (const auto& b : basis)
      for (const auto& c : basis) {
        if (size(a) + size(b) + size(c) > max_total) continue;
        t.check(algebra::prelie_identity_defect(cached, a, b, c).empty(), name + " pre-Lie");
        if (novikov) t.check(algebra::novikov_defect(cached, a, b, c).empty(), name + " Novikov");
      }
}

Tally criterion1() {
  Tally t;
  for (int labels : {1, 2}) {
    mi::TDAlgebra td{labels};
    const int total = labels == 1 ? 7 : 5;
    auto basis = mi::enumerate_populated(labels, total - 2);
    prelie_triples<mi::TDAlgebra, MultiIndex>(t, td, basis, mi::length, total, "(T,D)", true);
  }
  {
    auto basis = mi::enumerate_populated(1, 5);
    prelie_triples<mi::InsertionAlgebra, MultiIndex>(t, mi::InsertionAlgebra{0}, basis, mi::length, 15, "insertion on T");
    auto basis2 = mi::enumerate_populated(2, 3);
    for (int l : {0, 1})
      prelie_triples<mi::InsertionAlgebra, MultiIndex>(t, mi::InsertionAlgebra{l}, basis2, mi::length, 9, "insertion on T");
  }
  {
    mi::RAlgebra r{1, mi::FlavorSpec::r2(1), 8};
    std::vector<mi::RSymbol> basis;
    for (int g = 1; g <= 4; ++g)
      for (const auto& s : r.basis_of_grade(g)) basis.push_back(s);
    prelie_triples<mi::RAlgebra, mi::RSymbol>(t, r, basis, [](const mi::RSymbol& s) { return mi::length(s.gamma); }, 15,
                                              "(R>=2, |>)");
  }
  {
    auto ts = trees::enumerate_trees(1, 5);
    auto size = [](const Tree& x) { return x.nodes(); };
    prelie_triples<trees::GraftingAlgebra, Tree>(t, trees::GraftingAlgebra{1}, ts, size, 15, "grafting");
    prelie_triples<trees::TreeInsertionAlgebra, Tree>(t, trees::TreeInsertionAlgebra{1, 0}, ts, size, 15, "tree insertion");
    auto ts2 = trees::enumerate_trees(2, 3);
    prelie_triples<trees::GraftingAlgebra, Tree>(t, trees::GraftingAlgebra{2}, ts2, size, 9, "grafting");
    for (int l : {0, 1})
      prelie_triples<trees::TreeInsertionAlgebra, Tree>(t, trees::TreeInsertionAlgebra{2, l}, ts2, size, 9,
                                                        "tree insertion");
  }
  t.note("(T,D) triples with total length <= 7 (1 label) / 5 (2 labels); other products on operands <= 5 (1 label) / 3 (2 labels)");
  return t;
}

// ---- 2: Guin-Oudom / Hopf suite ----

Tally criterion2() {
  Tally t;
  using TD = algebra::GuinOudom<mi::TDAlgebra>;
  using Index = TD::Index;
  TD go(mi::TDAlgebra{1});
  TD go2(mi::TDAlgebra{2});

  auto random_index = [&](TD& g, int max_degree) {
    auto basis = g.basis_up_to(max_degree);
    Index I;
    int budget = uniform(0, max_degree);
    for (int tries = 0; tries < 8; ++tries) {
      const auto& k = pick(basis);
      if (g.grade(k) <= budget) {
        I.add(k);
        budget -= g.grade(k);
      }
    }
    return I;
  };
  auto random_word = [&](TD& g, int max_letters, int max_grade) {
    auto basis = g.basis_up_to(max_grade);
    TD::Word w;
    const int n = uniform(0, max_letters);
    for (int i = 0; i < n; ++i) w.push_back(pick(basis));
    return g.normal_form(w);
  };

  // Right symmetry: (U ⋄ a) ⋄ b = (U ⋄ b) ⋄ a.
  for (TD* g : {&go, &go2}) {
    auto basis = g->basis_up_to(2);
    for (int rep = 0; rep < 40; ++rep) {
      auto U = random_word(*g, 3, 2);
      TD::Series a(pick(basis)), b(pick(basis));
      t.check(g->diamond(g->diamond(U, a), b) == g->diamond(g->diamond(U, b), a), "right symmetry");
    }
  }
  // Coproduct of A_I splits I.
  for (int rep = 0; rep < 25; ++rep) {
    Index I = random_index(go, 5);
    LinComb<std::pair<Index, Index>> got, expect;
    for (const auto& [ww, c] : go.word_coproduct(go.go_to_words(I))) {
      auto l = go.words_to_go(TD::WordSeries(ww.first));
      auto r = go.words_to_go(TD::WordSeries(ww.second));
      for (const auto& [J1, c1] : l)
        for (const auto& [J2, c2] : r) got.add({J1, J2}, c * c1 * c2);
    }
    for (const auto& J : sub_multisets(I)) expect.add({J, *I.minus(J)}, 1);
    t.check(got == expect, "GO coproduct splitting");
  }
  // proj(UU') = proj(U) ε(U') + ρ(U) proj(U').
  auto proj1 = [](const TD::IndexSeries& s) {
    TD::Series out;
    for (const auto& [I, c] : s)
      if (I.length() == 1) out.add(I.entries().front().first, c);
    return out;
  };
  for (int rep = 0; rep < 40; ++rep) {
    Index I1 = random_index(go, 4), I2 = random_index(go, 3);
    TD::Series rhs = go.rho_apply(I1, proj1(TD::IndexSeries(I2)));
    if (I2.empty()) rhs += proj1(TD::IndexSeries(I1));
    t.check(proj1(go.go_product(I1, I2)) == rhs, "projection formula");
  }
  // U a = Σ U_(2) ⋄ ρ(U_(1)) a.
  {
    auto basis = go.basis_up_to(3);
    for (int rep = 0; rep < 40; ++rep) {
      auto U = random_word(go, 3, 2);
      const auto& a = pick(basis);
      auto lhs = go.multiply(U, TD::WordSeries(TD::Word{a}));
      TD::WordSeries rhs;
      for (const auto& [ww, c] : go.word_coproduct(U))
        rhs.add_scaled(go.diamond(TD::WordSeries(ww.second), go.rho_words_apply(TD::WordSeries(ww.first), TD::Series(a))), c);
      t.check(lhs == rhs, "generalized Leibniz");
    }
  }
  // Hopf axioms to degree 5.
  using Triple = std::tuple<Index, Index, Index>;
  for (int d = 0; d <= 5; ++d)
    for (const auto& I : go.indices_of_degree(d)) {
      auto D = go.coproduct(I);
      if (d <= 4) t.check(D == go.coproduct_direct(I), "coproduct tables vs definition");
      LinComb<Triple> left, right;
      TD::IndexSeries counit_l, counit_r, m_s_id, m_id_s, eps;
      for (const auto& [p, c] : D) {
        for (const auto& [q, e] : go.coproduct(p.first)) left.add({q.first, q.second, p.second}, c * e);
        for (const auto& [q, e] : go.coproduct(p.second)) right.add({p.first, q.first, q.second}, c * e);
        if (p.second.empty()) counit_l.add(p.first, c);
        if (p.first.empty()) counit_r.add(p.second, c);
        for (const auto& [J, e] : go.antipode(p.first)) m_s_id.add(J + p.second, c * e);
        for (const auto& [J, e] : go.antipode(p.second)) m_id_s.add(p.first + J, c * e);
      }
      if (I.empty()) eps.add(Index{}, 1);
      t.check(left == right, "coassociativity");
      t.check(counit_l == TD::IndexSeries(I) && counit_r == TD::IndexSeries(I), "counit");
      t.check(m_s_id == eps && m_id_s == eps, "antipode");
    }
  // exp(f) * exp(g) = exp(f + ρ(exp f) g) to degree 4.
  for (TD* g : {&go, &go2}) {
    const int N = 4;
    auto basis = g->basis_up_to(N);
    for (int rep = 0; rep < (g == &go ? 6 : 2); ++rep) {
      TD::Series a = random_series(basis), b = random_series(basis);
      algebra::Character<MultiIndex> F{N, a}, G{N, b};
      t.check(algebra::convolve(*g, F, G).f == algebra::bch_compose(*g, a, b, N), "BCH consistency");
    }
  }
  return t;
}

// ---- 3: dictionary suite ----

Tally criterion3() {
  Tally t;
  for (int labels : {1, 2}) {
    auto all = trees::enumerate_trees(labels, 5);
    for (const auto& a : all)
      for (const auto& b : all) {
        if (a.nodes() + b.nodes() > 6) continue;
        auto [ca, ba] = trees::psi(a);
        auto [cb, bb] = trees::psi(b);
        t.check(trees::psi(trees::graft(a, b)) == mi::t_prelie(ba, bb) * (ca * cb), "grafting morphism " + to_string(a) + " " + to_string(b));
        for (int l = 0; l < labels; ++l) {
          auto ins = trees::insertion(l, a, b);
          t.check(ins == tree_oracles::insertion(l, a, b), "insertion recursion vs counting");
          t.check(trees::psi(ins) == mi::insert_prelie(l, ba, bb) * (ca * cb), "insertion morphism");
        }
      }

    // Simultaneous grafting of up to three trees, all operands together ≤ 6 nodes.
    algebra::GuinOudom<mi::TDAlgebra> go(mi::TDAlgebra{labels});
    std::vector<Tree> gs;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int used) {
      if (!gs.empty())
        for (const auto& target : all) {
          if (used + target.nodes() > 6) continue;
          algebra::GuinOudom<mi::TDAlgebra>::Index J;
          Rational scale = 1;
          for (const auto& g : gs) {
            auto [c, b] = trees::psi(g);
            J.add(b);
            scale *= c;
          }
          auto [ct, bt] = trees::psi(target);
          const auto direct = trees::simultaneous_graft(gs, target);
          t.check(direct == tree_oracles::simultaneous_graft(gs, target), "simultaneous grafting vs assignments");
          const auto lhs = trees::psi(direct);
          t.check(lhs == go.rho_apply(J, mi::monomial(bt, ct)) * (scale * J.factorial()), "simultaneous grafting morphism");
        }
      if (gs.size() == 3) return;
      for (std::size_t i = from; i < all.size(); ++i) {
        if (used + all[i].nodes() + 1 > 6) continue;
        gs.push_back(all[i]);
        rec(i, used + all[i].nodes());
        gs.pop_back();
      }
    };
    rec(0, 0);

    // Translation: every single-tree v_ℓ on ≥ 2 nodes against every τ, together ≤ 6 nodes.
    mi::Translator tr(labels, mi::FlavorSpec::r2(labels), 10);
    for (const auto& w : all) {
      if (w.nodes() < 2 || w.nodes() > 5) continue;
      for (int l = 0; l < labels; ++l) {
        std::vector<TreeSeries> v(labels);
        v[l].add(w, small_rational());
        const auto c = trees::psi_translation(v);
        for (const auto& tau : all) {
          if (tau.nodes() + w.nodes() > 6) continue;
          auto [ct, bt] = trees::psi(tau);
          t.check(trees::psi(trees::tree_translate(v, tau)) == tr.apply(c, mi::monomial(bt, ct)), "translation commutes with psi");
        }
      }
    }
  }
  return t;
}

// ---- 4: counting ----

Tally criterion4() {
  Tally t;
  // Partition numbers by the largest-part recurrence.
  std::vector<long> p(8, 0);
  p[0] = 1;
  for (int part = 1; part < 8; ++part)
    for (int s = part; s < 8; ++s) p[s] += p[s - part];
  std::ostringstream got;
  for (int n = 1; n <= 8; ++n) {
    // Every multiplicity vector over (0,k), k < n, with length n and weight 1.
    std::vector<int> mult(n, 0);
    long count = 0;
    std::function<void(int, int)> rec = [&](int k, int left) {
      if (k == n) {
        if (left != 0) return;
        int weight = 0;
        for (int j = 0; j < n; ++j) weight += (1 - j) * mult[j];
        if (weight == 1) ++count;
        return;
      }
      for (int m = 0; m <= left; ++m) {
        mult[k] = m;
        rec(k + 1, left - m);
      }
      mult[k] = 0;
    };
    rec(0, n);
    const long ours = static_cast<long>(mi::populated_of_length(1, n).size());
    t.check(ours == count && count == p[n - 1], "length " + std::to_string(n) + ": " + std::to_string(ours));
    got << (n > 1 ? "," : "") << ours;
  }
  t.note("counts " + got.str());
  return t;
}

// ---- 5: numerical signatures ----

double chen_defect_at(const std::vector<rp::ClosedForm>& forms, int M, int N) {
  rp::SignatureOptions o;
  o.N = N;
  auto sig = rp::build_signature(rp::Driver::sample(forms, M), o);
  return rp::chen_report(sig, rp::ChenTable(static_cast<int>(forms.size()), N)).max_defect;
}

Tally criterion5() {
  Tally t;
  const int M = 4096, N = 4;
  const std::vector<std::vector<rp::ClosedForm>> drivers{{rp::ClosedForm::linear()},
                                                         {rp::ClosedForm::linear(), rp::ClosedForm::sine()}};
  for (std::size_t di = 0; di < drivers.size(); ++di) {
    const auto& forms = drivers[di];
    const std::string name = di == 0 ? "X=t" : "(t, sin 2pi t)";
    const auto d = rp::Driver::sample(forms, M);
    rp::SignatureOptions o;
    o.N = N;
    const auto sig = rp::build_signature(d, o);

    // (a) closed forms on every label ℓ whose driver is t.
    double worst = 0;
    const MultiIndex cherry = mi::node(0, 2) + mi::node(0, 0, 2);
    const MultiIndex chain = mi::node(0, 1, 2) + mi::node(0, 0);
    for (int s : sig.bases)
      for (int u = s; u <= M; ++u) {
        const double dt = d.time(u) - d.time(s);
        worst = std::max({worst, std::abs(sig.value(s, u, cherry) - dt * dt * dt / 3),
                          std::abs(sig.value(s, u, chain) - dt * dt * dt / 6)});
      }
    t.check(worst <= 1e-8, "(a) " + name + " closed forms " + sci(worst));
    t.note("(a) " + name + " " + sci(worst));

    // (b) Chen defect and its decay under grid doubling.
    const double d_half = chen_defect_at(forms, M / 2, N), d_full = chen_defect_at(forms, M, N);
    // A ratio of defects at rounding level measures nothing, so it cannot pass.
    const bool measurable = d_half > 1e-12 && d_full > 0;
    const double ratio = measurable ? d_half / d_full : NAN;
    t.check(d_full <= 1e-6, "(b) " + name + " defect " + sci(d_full));
    t.check(measurable && ratio >= 3.5, "(b) " + name + " defect does not shrink with M: " + sci(d_half) + " -> " + sci(d_full));
    t.note("(b) " + name + " defect " + sci(d_full) + " ratio " + sci(ratio));

    // (c) dictionary.
    trees::BranchedOptions bo;
    bo.n = N;
    const auto r = trees::dictionary_check(sig, trees::branched_signature(d, bo));
    t.check(r.max_rel <= 1e-8, "(c) " + name + " dictionary " + sci(r.max_rel));
    t.note("(c) " + name + " " + sci(r.max_rel));
  }
  return t;
}

// ---- 6: translations ----

double max_gap(const rp::SignatureGrid& a, const rp::SignatureGrid& b) {
  double err = 0;
  for (std::size_t k = 0; k < a.bases.size(); ++k)
    for (std::size_t i = 0; i < a.betas.size(); ++i)
      for (std::size_t u = 0; u < a.data[k][i].size(); ++u) err = std::max(err, std::abs(a.data[k][i][u] - b.data[k][i][u]));
  return err;
}

Tally criterion6() {
  Tally t;
  const int M = 4096, N = 3;
  const auto d = rp::Driver::sample({rp::ClosedForm::linear(), rp::ClosedForm::sine()}, M);
  rp::SignatureOptions o;
  o.N = N;
  const auto sig = rp::build_signature(d, o);
  using mi::leaf;
  using mi::node;

  mi::Translator tr(2, mi::FlavorSpec::r2(2), N);
  LinComb<mi::RSymbol> c, c2;
  c.add({node(0, 1) + leaf(1), 0}, Rational(1, 3));
  c.add({node(1, 1) + leaf(0), 1}, Rational(-1, 2));
  c.add({node(0, 2) + node(0, 0, 2), 0}, Rational(1, 4));
  c2.add({node(0, 1) + leaf(0), 1}, Rational(2, 5));
  c2.add({node(1, 2) + leaf(0) + leaf(1), 0}, Rational(1, 7));
  const mi::TranslationSpec a{2, mi::FlavorSpec::r2(2), N, c}, b{2, mi::FlavorSpec::r2(2), N, c2};
  const mi::TranslationSpec ab{2, mi::FlavorSpec::r2(2), N, tr.compose(c2, c, N)};
  const double group = max_gap(rp::translate(rp::translate(sig, a), b), rp::translate(sig, ab));
  t.check(group <= 1e-10, "group law " + sci(group));

  double hier = 0;
  for (const auto& spec : {a, b}) hier = std::max(hier, rp::translated_hierarchy_check(d, spec, o).max_discrepancy);
  LinComb<mi::RSymbol> crl;
  crl.add({node(1, 1) + leaf(0), 1}, Rational(1, 4));
  const mi::TranslationSpec rl{2, mi::FlavorSpec::rl(2, {1}), N, crl};
  hier = std::max(hier, rp::translated_hierarchy_check(d, rl, o).max_discrepancy);
  t.check(hier <= 1e-6, "counterterm hierarchy " + sci(hier));

  const auto hat = mi::FlavorSpec::rhat(2, {0});
  LinComb<mi::RSymbol> h1, h2;
  h1.add({leaf(1), 0}, Rational(3, 2));
  h2.add({node(1, 1) + leaf(1), 0}, Rational(-1, 4));
  mi::Translator th(2, hat, N);
  const bool additive = th.compose(h2, h1, N) == h1 + h2;
  const double hat_gap = max_gap(rp::translate(rp::translate(sig, {2, hat, N, h1}), {2, hat, N, h2}),
                                 rp::translate(sig, {2, hat, N, h1 + h2}));
  t.check(additive && hat_gap <= 1e-10, "hat flavor additive " + sci(hat_gap));
  t.note("group " + sci(group) + ", hierarchy " + sci(hier) + ", hat " + sci(hat_gap));
  return t;
}

// ---- 7: sewing ----

Tally criterion7() {
  Tally t;
  const int M = 4096;
  const auto d = rp::Driver::sample({rp::ClosedForm::linear(), rp::ClosedForm::sine()}, M);
  rp::SignatureOptions o;
  o.N = 3;
  const auto sig = rp::build_signature(d, o);
  double worst = 0, worst_ex = 0;
  std::string where;
  for (const auto& beta : mi::populated_of_length(2, 3))
    for (int s : sig.bases)
      for (int u : sig.bases) {
        if (u <= s) continue;
        const auto r = rp::extend_level(sig, beta, s, u, 12, 1e-6);
        const double gap = std::abs(r.value - sig.value(s, u, beta));
        worst_ex = std::max(worst_ex, std::abs(r.extrapolated - sig.value(s, u, beta)));
        if (gap > worst) {
          worst = gap;
          where = mi::to_string(beta) + " on [" + std::to_string(s) + "," + std::to_string(u) + "]";
        }
      }
  t.check(worst <= 1e-6, "depth-12 gap " + sci(worst) + " at " + where);
  t.note("depth-12 gap " + sci(worst) + " (extrapolated " + sci(worst_ex) + ")");
  return t;
}

// ---- 8: expansion ----

Tally criterion8() {
  Tally t;
  struct Case {
    std::string name;
    std::vector<rp::ClosedForm> forms;
    mi::Nonlinearity a;
    double y0;
  };
  std::vector<Case> cases{
      {"a=y, X=t", {rp::ClosedForm::linear()}, {{mi::ScalarFunction(mi::PolynomialFn{{0, 1}})}}, 0.8},
      {"poly a, (t, sin)",
       {rp::ClosedForm::linear(), rp::ClosedForm::sine(0.5, 1, 0.3)},
       {{mi::ScalarFunction(mi::PolynomialFn{{0.5, 1, -0.25}}), mi::ScalarFunction(mi::PolynomialFn{{0, 0.5, 0, 0.1}})}},
       0.3}};
  for (const auto& cs : cases) {
    const auto d = rp::Driver::sample(cs.forms, 256);
    std::string orders;
    for (int N = 1; N <= 3; ++N) {
      trees::ExpansionOptions opt;
      opt.N = N;
      opt.H0 = 0.125;
      opt.halvings = 4;
      const auto r = trees::expansion_check(d, cs.a, cs.y0, opt);
      t.check(r.mi_order >= N + 0.5 && r.tree_order >= N + 0.5,
              cs.name + " N=" + std::to_string(N) + " order " + sci(r.mi_order));
      orders += (N > 1 ? "," : "") + sci(r.mi_order);
    }
    t.note(cs.name + " orders " + orders);
  }
  return t;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* name;
    Tally (*run)();
  };
  const Item items[] = {{1, "exact algebra suite", criterion1},   {2, "Guin-Oudom/Hopf suite", criterion2},
                        {3, "dictionary suite", criterion3},      {4, "counting", criterion4},
                        {5, "numerical signatures", criterion5},  {6, "translations", criterion6},
                        {7, "extension by sewing", criterion7},   {8, "expansion order", criterion8}};
  bool all = true;
  for (const auto& it : items) {
    const auto t0 = std::chrono::steady_clock::now();
    const Tally t = it.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && t.pass();
    std::string detail = std::to_string(t.checks) + " checks";
    for (const auto& n : t.notes) detail += "; " + n;
    for (const auto& f : t.failures) detail += "; failed: " + f;
    std::printf("%s %d %s: %s (%.1fs)\n", t.pass() ? "PASS" : "FAIL", it.id, it.name, detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
