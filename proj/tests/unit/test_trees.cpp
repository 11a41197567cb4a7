#include <doctest.h>

#include <cmath>
#include <set>

#include "../oracles/tree_oracles.hpp"
#include "mirp/algebra/guin_oudom.hpp"
#include "mirp/algebra/prelie.hpp"
#include "mirp/multiindex/polynomial.hpp"
#include "mirp/multiindex/translation.hpp"
#include "mirp/roughpath/signature.hpp"
#include "mirp/trees/algebras.hpp"
#include "mirp/trees/branched.hpp"
#include "mirp/trees/expansion.hpp"
#include "mirp/trees/maps.hpp"
#include "support.hpp"

using namespace mirp;
using namespace mirp::trees;
using mi::MultiIndex;
using testing_support::small_rational;
using testing_support::uniform;

namespace {

const Tree leaf0 = Tree::leaf(0);
const Tree chain2 = parse_tree("0[0]");
const Tree chain3 = parse_tree("0[0[0]]");
const Tree cherry = parse_tree("0[0,0]");

// Ordered pairs with at most max_total nodes together.
std::vector<std::pair<Tree, Tree>> pairs_up_to(int labels, int max_total) {
  auto all = enumerate_trees(labels, max_total - 1);
  std::vector<std::pair<Tree, Tree>> out;
  for (const auto& a : all)
    for (const auto& b : all)
      if (a.nodes() + b.nodes() <= max_total) out.emplace_back(a, b);
  return out;
}

mi::Poly psi_scaled(const Tree& t) {
  auto [c, b] = psi(t);
  return mi::monomial(b, c);
}

}  // namespace

TEST_CASE("tree serialization and canonical order") {
  Tree t(0, {cherry, leaf0, Tree::leaf(1)});
  CHECK(to_string(t) == "0[0,1,0[0,0]]");
  CHECK(parse_tree(" 0 [ 0[0 ,0], 1, 0 ] ") == t);
  CHECK(t.nodes() == 6);
  CHECK(t.max_label() == 1);
  for (const auto& s : {"", "0[", "0[]", "a", "0]", "0[0]x", "-1"}) CHECK_THROWS_AS(parse_tree(s), std::invalid_argument);
  for (const auto& x : enumerate_trees(2, 5)) CHECK(parse_tree(to_string(x)) == x);
}

TEST_CASE("tree counts against leaf-attachment enumeration") {
  const std::vector<int> one_label{1, 1, 2, 4, 9, 20, 48, 115};
  for (int n = 1; n <= 8; ++n) CHECK(trees_with_nodes(1, n).size() == static_cast<std::size_t>(one_label[n - 1]));
  CHECK(trees_with_nodes(2, 2).size() == 4);
  for (int labels : {1, 2}) {
    const int top = labels == 1 ? 7 : 5;
    auto grown = tree_oracles::grow(labels, top);
    for (int n = 1; n <= top; ++n) {
      auto ours = trees_with_nodes(labels, n);
      CHECK(std::set<Tree>(ours.begin(), ours.end()) == grown[n]);
      CHECK(std::is_sorted(ours.begin(), ours.end()));
    }
  }
}

TEST_CASE("symmetry factor, fertility and psi") {
  CHECK(symmetry_factor(leaf0) == 1);
  CHECK(symmetry_factor(cherry) == 2);
  CHECK(symmetry_factor(chain3) == 1);
  CHECK(symmetry_factor(parse_tree("0[0,0,0]")) == 6);
  CHECK(symmetry_factor(parse_tree("0[0[0],0[0]]")) == 2);
  CHECK(symmetry_factor(parse_tree("0[0,1]")) == 1);
  auto [c1, b1] = psi(cherry);
  CHECK(c1 == 2);
  CHECK(b1 == mi::parse_multiindex("[[0,0,2],[0,2,1]]"));
  auto [c2, b2] = psi(chain3);
  CHECK(c2 == 1);
  CHECK(b2 == mi::parse_multiindex("[[0,0,1],[0,1,2]]"));
  for (const auto& t : enumerate_trees(2, 6)) CHECK(mi::is_populated(fertility(t)));
}

TEST_CASE("fertility classes match the filtered enumeration") {
  CHECK(fertility_class(mi::leaf(0)) == std::vector<Tree>{leaf0});
  CHECK(fertility_class(mi::parse_multiindex("[[0,0,2],[0,2,1]]")) == std::vector<Tree>{cherry});
  CHECK(fertility_class(mi::parse_multiindex("[[0,0,1],[0,2,1]]")).empty());
  for (int labels : {1, 2}) {
    const int top = labels == 1 ? 7 : 5;
    auto all = enumerate_trees(labels, top);
    for (const auto& beta : mi::enumerate_populated(labels, top)) {
      std::vector<Tree> filtered;
      for (const auto& t : all)
        if (fertility(t) == beta) filtered.push_back(t);
      CHECK(fertility_class(beta) == filtered);
    }
  }
}

TEST_CASE("grafting and insertion examples") {
  CHECK(graft(leaf0, leaf0) == TreeSeries(chain2));
  TreeSeries g = graft(leaf0, chain2);
  CHECK(g.coeff(chain3) == 1);
  CHECK(g.coeff(cherry) == 1);
  TreeSeries want;
  want.add(chain3, 2);
  want.add(cherry, 1);
  CHECK(insertion(0, chain2, chain2) == want);
  CHECK(insertion(0, cherry, leaf0) == TreeSeries(cherry));
  CHECK(insertion(1, chain2, chain2).empty());
  CHECK(simultaneous_graft({}, cherry) == TreeSeries(cherry));
}

TEST_CASE("insertion recursion equals brute-force counting") {
  for (int labels : {1, 2})
    for (const auto& [a, b] : pairs_up_to(labels, 6))
      for (int l = 0; l < labels; ++l) CHECK(insertion(l, a, b) == tree_oracles::insertion(l, a, b));
}

TEST_CASE("simultaneous grafting against assignments and the grafting engine") {
  algebra::GuinOudom<GraftingAlgebra> go(GraftingAlgebra{2});
  auto trees = enumerate_trees(2, 3);
  int checked = 0;
  for (int k = 1; k <= 3; ++k)
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Tree> gs;
      int total = 0;
      for (int i = 0; i < k; ++i) {
        gs.push_back(testing_support::pick(trees));
        total += gs.back().nodes();
      }
      const Tree& target = testing_support::pick(trees);
      if (total + target.nodes() > 6) continue;
      TreeSeries direct = simultaneous_graft(gs, target);
      CHECK(direct == tree_oracles::simultaneous_graft(gs, target));
      algebra::GuinOudom<GraftingAlgebra>::Index I;
      for (const auto& t : gs) I.add(t);
      CHECK(direct == go.rho_apply(I, TreeSeries(target)) * I.factorial());
      ++checked;
    }
  CHECK(checked > 20);
}

TEST_CASE("grafting and insertion are pre-Lie") {
  GraftingAlgebra ga{2};
  auto trees = enumerate_trees(2, 3);
  for (const auto& a : trees)
    for (const auto& b : trees)
      for (const auto& c : trees)
        if (a.nodes() + b.nodes() + c.nodes() <= 5) CHECK(algebra::prelie_identity_defect(ga, a, b, c).empty());
  for (int labels : {1, 2}) {
    auto ts = enumerate_trees(labels, 3);
    for (int l = 0; l < labels; ++l) {
      TreeInsertionAlgebra ia{labels, l};
      for (const auto& a : ts)
        for (const auto& b : ts)
          for (const auto& c : ts)
            if (a.nodes() + b.nodes() + c.nodes() <= 7) CHECK(algebra::prelie_identity_defect(ia, a, b, c).empty());
    }
  }
}

TEST_CASE("psi is a morphism for grafting and insertion") {
  for (int labels : {1, 2})
    for (const auto& [a, b] : pairs_up_to(labels, 6)) {
      auto [ca, ba] = psi(a);
      auto [cb, bb] = psi(b);
      CHECK(psi(graft(a, b)) == mi::t_prelie(ba, bb) * (ca * cb));
      for (int l = 0; l < labels; ++l) CHECK(psi(insertion(l, a, b)) == mi::insert_prelie(l, ba, bb) * (ca * cb));
    }
}

TEST_CASE("psi intertwines simultaneous grafting with the GO action of D") {
  algebra::GuinOudom<mi::TDAlgebra> go(mi::TDAlgebra{2});
  auto trees = enumerate_trees(2, 4);
  for (int trial = 0; trial < 120; ++trial) {
    const int k = uniform(1, 3);
    std::vector<Tree> gs;
    int total = 0;
    for (int i = 0; i < k; ++i) {
      gs.push_back(testing_support::pick(trees));
      total += gs.back().nodes();
    }
    const Tree& target = testing_support::pick(trees);
    if (total + target.nodes() > 6) continue;
    algebra::GuinOudom<mi::TDAlgebra>::Index J;
    Rational scale = 1;
    for (const auto& t : gs) {
      auto [c, b] = psi(t);
      J.add(b);
      scale *= c;
    }
    CHECK(psi(simultaneous_graft(gs, target)) == go.rho_apply(J, psi_scaled(target)) * (scale * J.factorial()));
  }
}

TEST_CASE("tree translation") {
  std::vector<TreeSeries> zero(2);
  for (const auto& t : enumerate_trees(2, 4)) CHECK(tree_translate(zero, t) == TreeSeries(t));
  std::vector<TreeSeries> v(1);
  v[0].add(cherry, Rational(3, 2));
  TreeSeries want(leaf0);
  want.add(cherry, Rational(3, 2));
  CHECK(tree_translate(v, leaf0) == want);
  CHECK_THROWS_AS(tree_translate(v, Tree::leaf(1)), std::invalid_argument);
}

TEST_CASE("psi commutes tree translation with the multi-index translation") {
  for (int labels : {1, 2}) {
    mi::Translator tr(labels, mi::FlavorSpec::r2(labels), 10);
    auto ws = enumerate_trees(labels, 3);
    auto taus = enumerate_trees(labels, 4);
    for (const auto& w : ws) {
      if (w.nodes() < 2) continue;
      for (int l = 0; l < labels; ++l) {
        std::vector<TreeSeries> v(labels);
        v[l].add(w, small_rational());
        const auto c = psi_translation(v);
        for (const auto& t : taus) {
          if (t.nodes() + w.nodes() > 6) continue;
          CHECK(psi(tree_translate(v, t)) == tr.apply(c, psi_scaled(t)));
        }
      }
    }
    // Two-term v on small trees.
    std::vector<TreeSeries> v(labels);
    v[0].add(chain2, Rational(1, 3));
    v[labels - 1].add(Tree(labels - 1, {Tree::leaf(0)}), Rational(-2));
    v[0].add(chain3, Rational(1, 2));
    const auto c = psi_translation(v);
    for (const auto& t : enumerate_trees(labels, 3)) CHECK(psi(tree_translate(v, t)) == tr.apply(c, psi_scaled(t)));
  }
}

TEST_CASE("GO products of the insertion algebra map onto the multi-index ones") {
  algebra::GuinOudom<TreeInsertionAlgebra> gt(TreeInsertionAlgebra{1, 0});
  algebra::GuinOudom<mi::RAlgebra> gr(mi::RAlgebra{1, mi::FlavorSpec::r2(1), 6});
  using TI = algebra::GuinOudom<TreeInsertionAlgebra>::Index;
  using RI = algebra::GuinOudom<mi::RAlgebra>::Index;
  auto image = [](const TI& K) {
    RI J;
    Rational c = 1;
    for (const auto& [t, m] : K) {
      auto [s, b] = psi(t);
      J.add(mi::RSymbol{b, 0}, m);
      for (int i = 0; i < m; ++i) c *= s;
    }
    c *= J.factorial() / K.factorial();
    return std::pair{c, J};
  };
  auto map_series = [&](const algebra::GuinOudom<TreeInsertionAlgebra>::IndexSeries& s) {
    algebra::GuinOudom<mi::RAlgebra>::IndexSeries out;
    for (const auto& [K, c] : s) {
      auto [f, J] = image(K);
      out.add(J, c * f);
    }
    return out;
  };
  int checked = 0;
  for (int d1 = 0; d1 <= 4; ++d1)
    for (int d2 = 0; d1 + d2 <= 4; ++d2)
      for (const auto& K1 : gt.indices_of_degree(d1))
        for (const auto& K2 : gt.indices_of_degree(d2)) {
          auto [f1, J1] = image(K1);
          auto [f2, J2] = image(K2);
          CHECK(map_series(gt.go_product(K1, K2)) == gr.go_product(J1, J2) * (f1 * f2));
          ++checked;
        }
  CHECK(checked > 80);
}

TEST_CASE("elementary differentials") {
  mi::Nonlinearity a{{mi::ScalarFunction(mi::SineFn{1.3, 0.7, 0.2}), mi::ScalarFunction(mi::PolynomialFn{{0.5, -1, 0.25, 2}})}};
  CHECK(elementary_differential(leaf0, a, 0.4) == doctest::Approx(a.fields[0](0.4)));
  // cherry: a''·a·a
  const double y = 0.4, d2 = -1.3 * 0.49 * std::sin(0.7 * y + 0.2), f = a.fields[0](y);
  CHECK(elementary_differential(cherry, a, y) == doctest::Approx(d2 * f * f).epsilon(1e-13));
  for (const auto& t : enumerate_trees(2, 5)) {
    auto [s, b] = psi(t);
    for (double yy : {-0.8, 0.1, 1.7}) {
      const double lhs = elementary_differential(t, a, yy), rhs = s.get_d() * mi::z_functional(b, a, yy);
      CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("branched signature closed forms for X = t") {
  auto d = rp::Driver::sample({rp::ClosedForm::linear()}, 4096);
  BranchedOptions bo;
  bo.n = 3;
  auto br = branched_signature(d, bo);
  const int ic = br.tree_index(cherry), il = br.tree_index(chain3), i1 = br.tree_index(leaf0);
  REQUIRE(ic >= 0);
  REQUIRE(il >= 0);
  CHECK(br.tree_index(parse_tree("0[0,0,0]")) == -1);
  for (int s : br.bases)
    for (int t = s; t <= d.M; t += 64) {
      const double dt = d.time(t) - d.time(s);
      CHECK(std::abs(br.value(s, t, i1) - dt) < 1e-13);
      CHECK(std::abs(br.value(s, t, ic) - dt * dt * dt / 3) < 1e-8);
      CHECK(std::abs(br.normalized(s, t, ic) - dt * dt * dt / 6) < 1e-8);
      CHECK(std::abs(br.normalized(s, t, il) - dt * dt * dt / 6) < 1e-8);
    }
  CHECK_THROWS_AS(br.value(1, 2, 0), std::out_of_range);
  CHECK_THROWS_AS(br.value(512, 0, 0), std::invalid_argument);
}

TEST_CASE("dictionary between the two hierarchies") {
  auto d = rp::Driver::sample({rp::ClosedForm::linear(), rp::ClosedForm::sine()}, 4096);
  rp::SignatureOptions so;
  so.N = 4;
  auto sig = rp::build_signature(d, so);
  BranchedOptions bo;
  bo.n = 4;
  auto br = branched_signature(d, bo);
  auto r = dictionary_check(sig, br);
  CHECK(r.entries > 0);
  CHECK(r.max_rel <= 1e-8);
  so.N = 1;
  auto r1 = dictionary_check(rp::build_signature(d, so), br);
  CHECK(r1.max_abs == 0.0);
  bo.n = 3;
  CHECK_THROWS_AS(dictionary_check(sig, branched_signature(d, bo)), std::invalid_argument);
}

TEST_CASE("expansion for a(y) = y and X = t") {
  auto d = rp::Driver::sample({rp::ClosedForm::linear()}, 256);
  mi::Nonlinearity a{{mi::ScalarFunction(mi::PolynomialFn{{0, 1}})}};
  const double y0 = 0.8;
  for (int N = 1; N <= 3; ++N) {
    ExpansionOptions opt;
    opt.N = N;
    opt.halvings = 5;
    auto r = expansion_check(d, a, y0, opt);
    for (const auto& row : r.rows) {
      CHECK(std::abs(row.increment - y0 * std::expm1(row.H)) < 1e-10);
      double partial = 0, term = 1;
      for (int n = 1; n <= N; ++n) {
        term *= row.H / n;
        partial += term;
      }
      CHECK(std::abs(row.mi_sum - y0 * partial) < 1e-12);
    }
    CHECK(r.max_sum_gap < 1e-12);
    CHECK(r.mi_order >= N + 0.5);
    CHECK(r.tree_order >= N + 0.5);
    CHECK(r.mi_order <= N + 1.5);
  }
}

TEST_CASE("expansion for a polynomial field and a two-label driver") {
  auto d = rp::Driver::sample({rp::ClosedForm::linear(), rp::ClosedForm::sine(0.5, 1, 0.3)}, 256);
  mi::Nonlinearity a{{mi::ScalarFunction(mi::PolynomialFn{{0.5, 1, -0.25}}), mi::ScalarFunction(mi::PolynomialFn{{0, 0.5, 0, 0.1}})}};
  for (int N = 1; N <= 3; ++N) {
    ExpansionOptions opt;
    opt.N = N;
    opt.H0 = 0.125;
    opt.halvings = 4;
    auto r = expansion_check(d, a, 0.3, opt);
    CHECK(r.max_sum_gap < 1e-12);
    CHECK(r.mi_order >= N + 0.5);
  }
  rp::Driver bare = d;
  bare.forms.reset();
  CHECK_THROWS_AS(expansion_check(bare, a, 0.3, {}), std::invalid_argument);
}
