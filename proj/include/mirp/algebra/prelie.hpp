#pragma once

#include <concepts>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirp/lincomb.hpp"
#include "mirp/multiset.hpp"

namespace mirp::algebra {

struct GradeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A pre-Lie algebra given by its structure constants on a basis.
template <class A>
concept PreLieAlgebra = requires(const A& alg, const typename A::key_type& x) {
  { alg.product(x, x) } -> std::convertible_to<LinComb<typename A::key_type>>;
};

template <class A>
concept GradedPreLieAlgebra = PreLieAlgebra<A> && requires(const A& alg, const typename A::key_type& x) {
  { alg.grade(x) } -> std::convertible_to<int>;
  { alg.serialize(x) } -> std::convertible_to<std::string>;
  { alg.min_grade() } -> std::convertible_to<int>;
};

template <class A>
concept EnumerablePreLieAlgebra = GradedPreLieAlgebra<A> && requires(const A& alg, int g) {
  { alg.basis_of_grade(g) } -> std::convertible_to<std::vector<typename A::key_type>>;
};

// A left module over a pre-Lie algebra viewed as a Lie algebra, graded compatibly.
template <class M>
concept GradedModule = requires(const M& m, const typename M::key_type& v, const typename M::lie_key_type& a) {
  { m.act(a, v) } -> std::convertible_to<LinComb<typename M::key_type>>;
  { m.grade(v) } -> std::convertible_to<int>;
};

template <PreLieAlgebra A>
using SeriesOf = LinComb<typename A::key_type>;

template <PreLieAlgebra A>
SeriesOf<A> product(const A& alg, const SeriesOf<A>& x, const SeriesOf<A>& y) {
  using K = typename A::key_type;
  return bilinear(x, y, [&](const K& a, const K& b) { return SeriesOf<A>(alg.product(a, b)); });
}

// a▷(b▷c) − (a▷b)▷c − b▷(a▷c) + (b▷a)▷c
template <PreLieAlgebra A>
SeriesOf<A> prelie_identity_defect(const A& alg, const SeriesOf<A>& a, const SeriesOf<A>& b,
                                   const SeriesOf<A>& c) {
  SeriesOf<A> d = product(alg, a, product(alg, b, c));
  d -= product(alg, product(alg, a, b), c);
  d -= product(alg, b, product(alg, a, c));
  d += product(alg, product(alg, b, a), c);
  return d;
}

template <PreLieAlgebra A>
SeriesOf<A> prelie_identity_defect(const A& alg, const typename A::key_type& a,
                                   const typename A::key_type& b, const typename A::key_type& c) {
  return prelie_identity_defect(alg, SeriesOf<A>(a), SeriesOf<A>(b), SeriesOf<A>(c));
}

// (a▷b)▷c − (a▷c)▷b
template <PreLieAlgebra A>
SeriesOf<A> novikov_defect(const A& alg, const typename A::key_type& a, const typename A::key_type& b,
                           const typename A::key_type& c) {
  SeriesOf<A> sa(a), sb(b), sc(c);
  return product(alg, product(alg, sa, sb), sc) - product(alg, product(alg, sa, sc), sb);
}

// The pre-Lie algebra with all products zero, on a graded basis of labelled generators.
struct TrivialAlgebra {
  using key_type = std::pair<int, int>;  // (grade, tag)
  LinComb<key_type> product(const key_type&, const key_type&) const { return {}; }
  int grade(const key_type& k) const { return k.first; }
  std::string serialize(const key_type& k) const {
    return std::to_string(k.first) + ":" + std::to_string(k.second);
  }
  int min_grade() const { return 1; }
};

// Sparse matrix stored by columns.
template <class K>
class Endo {
 public:
  static Endo identity(const std::vector<K>& cols) {
    Endo e;
    for (const auto& c : cols) e.set_column(c, LinComb<K>(c));
    return e;
  }

  void set_column(const K& col, LinComb<K> v) { cols_[col] = std::move(v); }
  bool has_column(const K& col) const { return cols_.count(col) != 0; }
  const LinComb<K>& column(const K& col) const {
    auto it = cols_.find(col);
    if (it == cols_.end()) throw TruncationError("column outside the truncation");
    return it->second;
  }
  Rational entry(const K& row, const K& col) const { return column(col).coeff(row); }
  const std::map<K, LinComb<K>>& columns() const { return cols_; }

  LinComb<K> apply(const LinComb<K>& v) const {
    LinComb<K> out;
    for (const auto& [k, c] : v) out.add_scaled(column(k), c);
    return out;
  }

  // (*this) ∘ right, on the columns of right.
  Endo compose(const Endo& right) const {
    Endo out;
    for (const auto& [k, v] : right.cols_) out.set_column(k, apply(v));
    return out;
  }

  template <class Grade>
  bool grade_triangular(Grade&& grade) const {
    for (const auto& [j, v] : cols_)
      for (const auto& [k, c] : v)
        if (grade(k) < grade(j)) return false;
    return true;
  }

  bool operator==(const Endo&) const = default;

 private:
  std::map<K, LinComb<K>> cols_;
};

// Truncated character, determined by its values on primitive basis elements.
template <class K>
struct Character {
  int truncation = 0;
  LinComb<K> f;

  Rational value(const Multiset<K>& index) const {
    Rational r = 1;
    for (const auto& [k, m] : index) {
      Rational fk = f.coeff(k);
      if (sgn(fk) == 0) return 0;
      for (int i = 0; i < m; ++i) r *= fk;
    }
    return r;
  }
  bool operator==(const Character&) const = default;
};

// All multisets over `support` whose degree Σ m·grade lies in [min_deg, max_deg], sorted.
template <class K, class Grade>
std::vector<Multiset<K>> multisets_by_degree(const std::vector<K>& support, Grade&& grade, int min_deg,
                                             int max_deg) {
  std::vector<std::pair<K, int>> items;
  for (const auto& k : support) {
    int g = grade(k);
    if (g <= 0) throw GradeError("multiset enumeration needs positive grades");
    items.emplace_back(k, g);
  }
  std::vector<Multiset<K>> out;
  Multiset<K> cur;
  auto rec = [&](auto&& self, std::size_t i, int deg) -> void {
    if (i == items.size()) {
      if (deg >= min_deg) out.push_back(cur);
      return;
    }
    self(self, i + 1, deg);
    int m = 0;
    while (deg + (m + 1) * items[i].second <= max_deg) {
      ++m;
      cur.add(items[i].first, 1);
      self(self, i + 1, deg + m * items[i].second);
    }
    if (m) cur.add(items[i].first, -m);
  };
  if (max_deg >= 0) rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mirp::algebra
