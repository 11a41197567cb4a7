#pragma once

#include <map>
#include <utility>

#include "mirp/rational.hpp"

namespace mirp {

// Finitely supported linear combination with exact coefficients.
// Zero coefficients are never stored.
template <class K>
class LinComb {
 public:
  using key_type = K;
  using map_type = std::map<K, Rational>;
  using const_iterator = typename map_type::const_iterator;

  LinComb() = default;
  explicit LinComb(const K& k, const Rational& c = 1) { add(k, c); }

  void add(const K& k, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Rational coeff(const K& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool contains(const K& k) const { return terms_.count(k) != 0; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const map_type& terms() const { return terms_; }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  LinComb& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  void add_scaled(const LinComb& o, const Rational& s) {
    if (sgn(s) == 0) return;
    for (const auto& [k, c] : o.terms_) add(k, c * s);
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(LinComb a, const Rational& s) { return a *= s; }
  friend LinComb operator*(const Rational& s, LinComb a) { return a *= s; }
  LinComb operator-() const { return *this * Rational(-1); }

  bool operator==(const LinComb& o) const { return terms_ == o.terms_; }

  // Linear extension of f : K -> LinComb<K2>.
  template <class F>
  auto map_linear(F&& f) const {
    using R = std::decay_t<decltype(f(std::declval<const K&>()))>;
    R out;
    for (const auto& [k, c] : terms_) out.add_scaled(f(k), c);
    return out;
  }

 private:
  map_type terms_;
};

// Bilinear extension of f : K1 x K2 -> LinComb<K3>.
template <class K1, class K2, class F>
auto bilinear(const LinComb<K1>& a, const LinComb<K2>& b, F&& f) {
  using R = std::decay_t<decltype(f(std::declval<const K1&>(), std::declval<const K2&>()))>;
  R out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b) out.add_scaled(f(x, y), cx * cy);
  return out;
}

}  // namespace mirp
