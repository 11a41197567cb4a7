#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mirp/algebra/prelie.hpp"

namespace mirp::algebra {

// Universal envelope of a graded connected pre-Lie algebra, in the
// Guin–Oudom basis A_I and in a PBW word basis.
//
// Words are kept in normal form: letters non-decreasing for the order
// (grade, serialization). Internally basis elements are interned to ints.
// Not thread-safe while tables are being filled.
template <GradedPreLieAlgebra A>
class GuinOudom {
 public:
  using Key = typename A::key_type;
  using Index = Multiset<Key>;
  using Word = std::vector<Key>;
  using Series = LinComb<Key>;
  using WordSeries = LinComb<Word>;
  using IndexSeries = LinComb<Index>;
  using IndexPair = std::pair<Index, Index>;
  using Coproduct = LinComb<IndexPair>;

  explicit GuinOudom(A alg) : alg_(std::move(alg)) {
    if (alg_.min_grade() < 1) throw GradeError("Guin-Oudom engine needs a connected grading (min grade >= 1)");
  }

  const A& algebra() const { return alg_; }

  int grade(const Key& k) const { return alg_.grade(k); }
  int degree(const Index& I) const {
    int d = 0;
    for (const auto& [k, m] : I) d += m * alg_.grade(k);
    return d;
  }

  const Series& product(const Key& a, const Key& b) { return key_product(intern(a), intern(b)); }

  WordSeries normal_form(const Word& w) { return to_public(normal(to_internal(w))); }

  WordSeries multiply(const WordSeries& u, const WordSeries& v) {
    return to_public(mul(to_internal(u), to_internal(v)));
  }

  // U ⋄ a
  WordSeries diamond(const WordSeries& u, const Series& a) {
    IWordSeries U = normalized(to_internal(u));
    IWordSeries out;
    for (const auto& [k, c] : a) {
      Letter l = intern(k);
      for (const auto& [w, cw] : U) out.add_scaled(diamond_letter(w, l), c * cw);
    }
    return to_public(out);
  }

  WordSeries go_to_words(const Index& I) { return to_public(go_words(I)); }

  IndexSeries words_to_go(const WordSeries& s) { return back_substitute(normalized(to_internal(s))); }

  IndexSeries go_product(const Index& a, const Index& b) {
    auto key = std::make_pair(a, b);
    auto it = go_product_cache_.find(key);
    if (it != go_product_cache_.end()) return it->second;
    IndexSeries r = back_substitute(mul(go_words(a), go_words(b)));
    return go_product_cache_.emplace(std::move(key), std::move(r)).first->second;
  }

  // ρ(U) v for U in words; ρ of a word is the composition of its letters.
  Series rho_words_apply(const WordSeries& u, const Series& v) {
    return rho_internal(to_internal(u), v);
  }

  Series rho_apply(const Index& I, const Series& v) { return rho_internal(go_words(I), v); }

  Endo<Key> rho_go(const Index& I, const std::vector<Key>& columns) {
    const IWordSeries& U = go_words(I);
    Endo<Key> e;
    for (const auto& c : columns) e.set_column(c, rho_internal(U, Series(c)));
    return e;
  }

  // ψ(U) v for a module ψ.
  template <GradedModule M>
  LinComb<typename M::key_type> module_words_apply(const M& mod, const WordSeries& u,
                                                   const LinComb<typename M::key_type>& v) {
    return module_internal(mod, to_internal(u), v);
  }

  template <GradedModule M>
  LinComb<typename M::key_type> module_apply(const M& mod, const Index& I, const LinComb<typename M::key_type>& v) {
    return module_internal(mod, go_words(I), v);
  }

  // Δ on U(L) as the algebra morphism with primitive letters: a sum over subsequences.
  LinComb<std::pair<Word, Word>> word_coproduct(const WordSeries& u) {
    LinComb<std::pair<Word, Word>> out;
    for (const auto& [w, c] : u) {
      const std::size_t n = w.size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Word l, r;
        for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? l : r).push_back(w[i]);
        out.add({std::move(l), std::move(r)}, c);
      }
    }
    return out;
  }

  // Coefficient of A_I in A_{I'}A_{I''} over all splittings of gr(I); the definition.
  Coproduct coproduct_direct(const Index& I)
    requires EnumerablePreLieAlgebra<A>
  {
    const int d = degree(I);
    Coproduct out;
    for (int d1 = 0; d1 <= d; ++d1)
      for (const auto& I1 : indices_of_degree(d1))
        for (const auto& I2 : indices_of_degree(d - d1)) {
          Rational c = go_product(I1, I2).coeff(I);
          if (sgn(c)) out.add({I1, I2}, c);
        }
    return out;
  }

  // Multiplicative extension of the length-one tables.
  Coproduct coproduct(const Index& I)
    requires EnumerablePreLieAlgebra<A>
  {
    auto it = coproduct_cache_.find(I);
    if (it != coproduct_cache_.end()) return it->second;
    Coproduct acc(IndexPair{Index{}, Index{}});
    for (const auto& [k, m] : I) {
      const Coproduct& prim = primitive_coproduct(k);
      for (int i = 0; i < m; ++i) {
        Coproduct next;
        for (const auto& [p, c] : acc)
          for (const auto& [q, e] : prim) next.add({p.first + q.first, p.second + q.second}, c * e);
        acc = std::move(next);
      }
    }
    return coproduct_cache_.emplace(I, std::move(acc)).first->second;
  }

  // Antipode of the commutative Hopf algebra on monomials a^I, from m(S⊗id)Δ = ηε.
  IndexSeries antipode(const Index& I)
    requires EnumerablePreLieAlgebra<A>
  {
    auto it = antipode_cache_.find(I);
    if (it != antipode_cache_.end()) return it->second;
    IndexSeries s;
    if (I.empty()) {
      s.add(Index{}, 1);
    } else {
      for (const auto& [p, c] : coproduct(I)) {
        if (p.first == I) continue;
        for (const auto& [J, e] : antipode(p.first)) s.add(J + p.second, -c * e);
      }
    }
    return antipode_cache_.emplace(I, std::move(s)).first->second;
  }

  std::vector<Key> basis_up_to(int max_grade)
    requires EnumerablePreLieAlgebra<A>
  {
    std::vector<Key> out;
    for (int g = alg_.min_grade(); g <= max_grade; ++g)
      for (const auto& k : alg_.basis_of_grade(g)) out.push_back(k);
    return out;
  }

  std::vector<Index> indices_of_degree(int d)
    requires EnumerablePreLieAlgebra<A>
  {
    auto it = indices_cache_.find(d);
    if (it != indices_cache_.end()) return it->second;
    auto v = multisets_by_degree(basis_up_to(d), [&](const Key& k) { return alg_.grade(k); }, d, d);
    return indices_cache_.emplace(d, std::move(v)).first->second;
  }

 private:
  using Letter = std::int32_t;
  using IWord = std::vector<Letter>;
  using IWordSeries = LinComb<IWord>;

  Letter intern(const Key& k) {
    auto it = ids_.find(k);
    if (it != ids_.end()) return it->second;
    Letter id = static_cast<Letter>(keys_.size());
    keys_.push_back(k);
    grades_.push_back(alg_.grade(k));
    names_.push_back(alg_.serialize(k));
    ids_.emplace(k, id);
    return id;
  }

  bool before(Letter a, Letter b) const {
    if (grades_[a] != grades_[b]) return grades_[a] < grades_[b];
    return names_[a] < names_[b];
  }

  bool is_normal(const IWord& w) const {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (before(w[i + 1], w[i])) return false;
    return true;
  }

  const Series& key_product(Letter a, Letter b) {
    auto key = std::make_pair(a, b);
    auto it = product_cache_.find(key);
    if (it != product_cache_.end()) return it->second;
    Key ka = keys_[a], kb = keys_[b];
    Series p = alg_.product(ka, kb);
    const int g = grades_[a] + grades_[b];
    for (const auto& [k, c] : p)
      if (alg_.grade(k) != g) throw GradeError("product violates the grading: " + alg_.serialize(k));
    return product_cache_.emplace(key, std::move(p)).first->second;
  }

  LinComb<Letter> bracket(Letter a, Letter b) {
    LinComb<Letter> out;
    for (const auto& [k, c] : key_product(a, b)) out.add(intern(k), c);
    for (const auto& [k, c] : key_product(b, a)) out.add(intern(k), -c);
    return out;
  }

  // PBW straightening: ba = ab − [a,b] at the first descent.
  IWordSeries normal(const IWord& w) {
    if (is_normal(w)) return IWordSeries(w);
    auto it = normal_cache_.find(w);
    if (it != normal_cache_.end()) return it->second;
    std::size_t i = 0;
    while (!before(w[i + 1], w[i])) ++i;
    IWord swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    IWordSeries out = normal(swapped);
    for (const auto& [k, c] : bracket(w[i], w[i + 1])) {
      IWord r(w.begin(), w.begin() + i);
      r.push_back(k);
      r.insert(r.end(), w.begin() + i + 2, w.end());
      out.add_scaled(normal(r), c);
    }
    return normal_cache_.emplace(w, std::move(out)).first->second;
  }

  IWordSeries normalized(const IWordSeries& s) {
    IWordSeries out;
    for (const auto& [w, c] : s) out.add_scaled(normal(w), c);
    return out;
  }

  IWordSeries mul(const IWordSeries& u, const IWordSeries& v) {
    IWordSeries out;
    for (const auto& [a, ca] : u)
      for (const auto& [b, cb] : v) {
        IWord w = a;
        w.insert(w.end(), b.begin(), b.end());
        out.add_scaled(normal(w), ca * cb);
      }
    return out;
  }

  // (a'U) ⋄ a = a'(U ⋄ a) − U ⋄ (a'▷a), for a normal word.
  IWordSeries diamond_letter(const IWord& w, Letter a) {
    if (w.empty()) return IWordSeries(IWord{a});
    auto key = std::make_pair(w, a);
    auto it = diamond_cache_.find(key);
    if (it != diamond_cache_.end()) return it->second;
    const Letter head = w.front();
    IWord rest(w.begin() + 1, w.end());
    IWordSeries out = mul(IWordSeries(IWord{head}), diamond_letter(rest, a));
    Series p = key_product(head, a);
    for (const auto& [k, c] : p) out.add_scaled(diamond_letter(rest, intern(k)), -c);
    return diamond_cache_.emplace(std::move(key), std::move(out)).first->second;
  }

  const IWordSeries& go_words(const Index& I) {
    auto it = go_cache_.find(I);
    if (it != go_cache_.end()) return it->second;
    IWordSeries U(IWord{});
    for (const auto& [k, m] : I) {
      Letter l = intern(k);
      for (int i = 0; i < m; ++i) {
        IWordSeries next;
        for (const auto& [w, c] : U) next.add_scaled(diamond_letter(w, l), c);
        U = std::move(next);
      }
    }
    U *= Rational(1) / I.factorial();
    return go_cache_.emplace(I, std::move(U)).first->second;
  }

  // The leading word of A_I is the sorted word of I with coefficient 1/I!.
  IndexSeries back_substitute(IWordSeries s) {
    IndexSeries out;
    while (!s.empty()) {
      auto lead = s.begin();
      for (auto it = s.begin(); it != s.end(); ++it)
        if (it->first.size() > lead->first.size()) lead = it;
      Index I;
      for (Letter l : lead->first) I.add(keys_[l]);
      Rational scale = lead->second * I.factorial();
      out.add(I, scale);
      s.add_scaled(go_words(I), -scale);
    }
    return out;
  }

  Series rho_internal(const IWordSeries& U, const Series& v) {
    Series out;
    for (const auto& [w, c] : U) {
      Series cur = v;
      for (auto it = w.rbegin(); it != w.rend() && !cur.empty(); ++it) {
        Series next;
        for (const auto& [k, e] : cur) next.add_scaled(key_product(*it, intern(k)), e);
        cur = std::move(next);
      }
      out.add_scaled(cur, c);
    }
    return out;
  }

  template <GradedModule M>
  LinComb<typename M::key_type> module_internal(const M& mod, const IWordSeries& U,
                                                const LinComb<typename M::key_type>& v) {
    using VK = typename M::key_type;
    LinComb<VK> out;
    for (const auto& [w, c] : U) {
      LinComb<VK> cur = v;
      for (auto it = w.rbegin(); it != w.rend() && !cur.empty(); ++it) {
        LinComb<VK> next;
        const Key& a = keys_[*it];
        for (const auto& [x, e] : cur) {
          LinComb<VK> img = mod.act(a, x);
          const int g = grades_[*it] + mod.grade(x);
          for (const auto& [y, f] : img)
            if (mod.grade(y) != g) throw GradeError("module action violates the grading");
          next.add_scaled(img, e);
        }
        cur = std::move(next);
      }
      out.add_scaled(cur, c);
    }
    return out;
  }

  const Coproduct& primitive_coproduct(const Key& k)
    requires EnumerablePreLieAlgebra<A>
  {
    auto it = primitive_cache_.find(k);
    if (it != primitive_cache_.end()) return it->second;
    return primitive_cache_.emplace(k, coproduct_direct(Index::single(k))).first->second;
  }

  IWord to_internal(const Word& w) {
    IWord r;
    r.reserve(w.size());
    for (const auto& k : w) r.push_back(intern(k));
    return r;
  }
  IWordSeries to_internal(const WordSeries& s) {
    IWordSeries r;
    for (const auto& [w, c] : s) r.add(to_internal(w), c);
    return r;
  }
  WordSeries to_public(const IWordSeries& s) const {
    WordSeries r;
    for (const auto& [w, c] : s) {
      Word pw;
      for (Letter l : w) pw.push_back(keys_[l]);
      r.add(pw, c);
    }
    return r;
  }

  A alg_;
  std::vector<Key> keys_;
  std::vector<int> grades_;
  std::vector<std::string> names_;
  std::map<Key, Letter> ids_;
  std::map<std::pair<Letter, Letter>, Series> product_cache_;
  std::map<IWord, IWordSeries> normal_cache_;
  std::map<std::pair<IWord, Letter>, IWordSeries> diamond_cache_;
  std::map<Index, IWordSeries> go_cache_;
  std::map<std::pair<Index, Index>, IndexSeries> go_product_cache_;
  std::map<Key, Coproduct> primitive_cache_;
  std::map<Index, Coproduct> coproduct_cache_;
  std::map<Index, IndexSeries> antipode_cache_;
  std::map<int, std::vector<Index>> indices_cache_;
};

// ρ itself, viewed as a module.
template <GradedPreLieAlgebra A>
struct AdjointModule {
  using key_type = typename A::key_type;
  using lie_key_type = typename A::key_type;
  const A* alg;
  LinComb<key_type> act(const lie_key_type& a, const key_type& v) const { return alg->product(a, v); }
  int grade(const key_type& v) const { return alg->grade(v); }
};

template <class K>
std::vector<K> support_of(const LinComb<K>& s) {
  std::vector<K> out;
  for (const auto& [k, c] : s) out.push_back(k);
  return out;
}

template <class A>
void check_truncation(GuinOudom<A>& go, const LinComb<typename A::key_type>& f, int N) {
  for (const auto& [k, c] : f)
    if (go.grade(k) > N) throw TruncationError("series exceeds the truncation grade");
}

// Σ_I f^I ψ(A_I) v, keeping module grades ≤ bound, summed over GO words.
template <class A, GradedModule M>
LinComb<typename M::key_type> coaction_apply_words(GuinOudom<A>& go, const M& mod,
                                                   const Character<typename A::key_type>& F,
                                                   const LinComb<typename M::key_type>& v, int bound) {
  using VK = typename M::key_type;
  LinComb<VK> out;
  auto grade = [&](const typename A::key_type& k) { return go.grade(k); };
  const auto supp = support_of(F.f);
  for (const auto& [x, cx] : v) {
    const int room = bound - mod.grade(x);
    if (room < 0) continue;
    for (const auto& I : multisets_by_degree(supp, grade, 0, room)) {
      Rational fI = F.value(I);
      out.add_scaled(go.module_apply(mod, I, LinComb<VK>(x)), fI * cx);
    }
  }
  return out;
}

// The same sum through U(t) = exp_⋄(tf). U is group-like, so U⋄f = U∗θ with
// ρ(U)θ = f, and the Taylor coefficients Ψ_n = Σ_{|I|=n} f^I ψ(A_I) obey
// nΨ_n = Σ_{m+j=n-1} Ψ_m ψ(θ_j), θ_j = −Σ_{n=1..j} R_n θ_{j−n}, R_n = ρ-part of U.
// A nonnegative max_order drops the terms with |I| > max_order.
template <class A, GradedModule M>
LinComb<typename M::key_type> coaction_apply(GuinOudom<A>& go, const M& mod,
                                             const Character<typename A::key_type>& F,
                                             const LinComb<typename M::key_type>& v, int bound,
                                             int max_order = -1) {
  using K = typename A::key_type;
  using VK = typename M::key_type;
  if (v.empty() || F.f.empty()) {
    LinComb<VK> out;
    for (const auto& [x, c] : v)
      if (mod.grade(x) <= bound) out.add(x, c);
    return out;
  }
  int gmin = 0, vmin = 0;
  bool first = true;
  for (const auto& [k, c] : F.f) {
    const int g = go.grade(k);
    if (g <= 0) throw GradeError("coaction needs positive grades");
    gmin = first ? g : std::min(gmin, g);
    first = false;
  }
  first = true;
  for (const auto& [x, c] : v) {
    vmin = first ? mod.grade(x) : std::min(vmin, mod.grade(x));
    first = false;
  }
  const int room = bound - vmin;
  if (room < 0) return {};
  // Lie elements that can still act have grade ≤ room.
  auto trunc_lie = [&](LinComb<K> s) {
    LinComb<K> out;
    for (const auto& [k, c] : s)
      if (go.grade(k) <= room) out.add(k, c);
    return out;
  };
  const int nmax = max_order >= 0 ? std::min(max_order, room / gmin) : room / gmin;

  std::vector<LinComb<K>> theta;
  std::map<std::pair<int, K>, LinComb<K>> rmemo;
  auto R = [&](auto&& self, int n, const K& x) -> LinComb<K> {
    if (n == 0) return LinComb<K>(x);
    if (go.grade(x) + n * gmin > room) return {};
    auto key = std::make_pair(n, x);
    auto it = rmemo.find(key);
    if (it != rmemo.end()) return it->second;
    LinComb<K> out;
    for (int j = 0; j < n; ++j)
      for (const auto& [a, ca] : theta[j])
        for (const auto& [y, cy] : trunc_lie(go.product(a, x)))
          out.add_scaled(self(self, n - 1 - j, y), ca * cy);
    out = trunc_lie(out);
    out *= Rational(1, n);
    return rmemo.emplace(std::move(key), std::move(out)).first->second;
  };
  theta.push_back(trunc_lie(F.f));
  for (int j = 1; j < nmax; ++j) {
    LinComb<K> t;
    for (int n = 1; n <= j; ++n)
      for (const auto& [x, c] : theta[j - n]) t.add_scaled(R(R, n, x), -c);
    theta.push_back(trunc_lie(t));
  }

  std::map<std::pair<int, VK>, LinComb<VK>> pmemo;
  auto Psi = [&](auto&& self, int n, const VK& y) -> LinComb<VK> {
    if (n == 0) return LinComb<VK>(y);
    const int gy = mod.grade(y);
    if (gy + n * gmin > bound) return {};
    auto key = std::make_pair(n, y);
    auto it = pmemo.find(key);
    if (it != pmemo.end()) return it->second;
    LinComb<VK> out;
    for (int j = 0; j < n; ++j)
      for (const auto& [a, ca] : theta[j]) {
        const int g = go.grade(a) + gy;
        if (g > bound) continue;
        for (const auto& [w, cw] : mod.act(a, y)) {
          if (mod.grade(w) != g) throw GradeError("module action violates the grading");
          out.add_scaled(self(self, n - 1 - j, w), ca * cw);
        }
      }
    out *= Rational(1, n);
    return pmemo.emplace(std::move(key), std::move(out)).first->second;
  };
  LinComb<VK> out;
  for (const auto& [x, cx] : v) {
    if (mod.grade(x) > bound) continue;
    for (int n = 0; n <= nmax; ++n) out.add_scaled(Psi(Psi, n, x), cx);
  }
  return out;
}

template <class A, GradedModule M>
Endo<typename M::key_type> coaction(GuinOudom<A>& go, const M& mod, const Character<typename A::key_type>& F,
                                    const std::vector<typename M::key_type>& columns, int bound) {
  Endo<typename M::key_type> e;
  for (const auto& c : columns)
    e.set_column(c, coaction_apply(go, mod, F, LinComb<typename M::key_type>(c), bound));
  return e;
}

// f + ρ(exp f) g, truncated at grade N.
template <class A>
LinComb<typename A::key_type> bch_compose(GuinOudom<A>& go, const LinComb<typename A::key_type>& f,
                                          const LinComb<typename A::key_type>& g, int N) {
  check_truncation(go, f, N);
  check_truncation(go, g, N);
  AdjointModule<A> ad{&go.algebra()};
  Character<typename A::key_type> F{N, f};
  return f + coaction_apply(go, ad, F, g, N);
}

// (F*G)_k = Σ f^{I'} g^{I''} (coefficient of A_{e_k} in A_{I'}A_{I''}).
template <class A>
Character<typename A::key_type> convolve(GuinOudom<A>& go, const Character<typename A::key_type>& F,
                                         const Character<typename A::key_type>& G) {
  using K = typename A::key_type;
  if (F.truncation != G.truncation) throw TruncationError("characters have different truncations");
  const int N = F.truncation;
  check_truncation(go, F.f, N);
  check_truncation(go, G.f, N);
  auto grade = [&](const K& k) { return go.grade(k); };
  auto left = multisets_by_degree(support_of(F.f), grade, 0, N);
  auto right = multisets_by_degree(support_of(G.f), grade, 0, N);
  Character<K> H{N, {}};
  for (const auto& I1 : left) {
    const int d1 = go.degree(I1);
    Rational f1 = F.value(I1);
    for (const auto& I2 : right) {
      if (d1 + go.degree(I2) > N || (I1.empty() && I2.empty())) continue;
      Rational c = f1 * G.value(I2);
      for (const auto& [J, e] : go.go_product(I1, I2))
        if (J.length() == 1) H.f.add(J.entries().front().first, c * e);
    }
  }
  return H;
}

// G with F*G = ε, grade by grade from the reduced coproduct.
template <class A>
Character<typename A::key_type> character_inverse(GuinOudom<A>& go, const Character<typename A::key_type>& F) {
  using K = typename A::key_type;
  const int N = F.truncation;
  check_truncation(go, F.f, N);
  auto grade = [&](const K& k) { return go.grade(k); };
  const int kmin = go.algebra().min_grade();
  Character<K> G{N, {}};
  auto left = multisets_by_degree(support_of(F.f), grade, 1, N);
  for (int n = kmin; n <= N; ++n) {
    LinComb<K> acc;
    auto right = multisets_by_degree(support_of(G.f), grade, 1, n - kmin);
    for (const auto& I1 : left) {
      const int d1 = go.degree(I1);
      if (d1 >= n) continue;
      Rational f1 = F.value(I1);
      for (const auto& I2 : right) {
        if (d1 + go.degree(I2) != n) continue;
        Rational c = f1 * G.value(I2);
        for (const auto& [J, e] : go.go_product(I1, I2))
          if (J.length() == 1) acc.add(J.entries().front().first, c * e);
      }
    }
    for (const auto& [k, c] : F.f)
      if (go.grade(k) == n) acc.add(k, c);
    for (const auto& [k, c] : acc) G.f.add(k, -c);
  }
  return G;
}

}  // namespace mirp::algebra
