#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mirp/rational.hpp"

namespace mirp {

// Finitely supported map T -> positive multiplicity, stored sorted by T.
template <class T>
class Multiset {
 public:
  using Entry = std::pair<T, int>;

  Multiset() = default;
  Multiset(std::initializer_list<Entry> init) {
    for (const auto& [x, m] : init) add(x, m);
  }
  static Multiset single(const T& x, int mult = 1) {
    Multiset s;
    s.add(x, mult);
    return s;
  }

  void add(const T& x, int mult = 1) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const Entry& e, const T& v) { return e.first < v; });
    if (it != entries_.end() && !(x < it->first)) {
      it->second += mult;
      if (it->second < 0) throw std::invalid_argument("negative multiplicity");
      if (it->second == 0) entries_.erase(it);
    } else {
      if (mult < 0) throw std::invalid_argument("negative multiplicity");
      if (mult > 0) entries_.insert(it, Entry{x, mult});
    }
  }

  int count(const T& x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const Entry& e, const T& v) { return e.first < v; });
    return (it != entries_.end() && !(x < it->first)) ? it->second : 0;
  }

  int length() const {
    int n = 0;
    for (const auto& e : entries_) n += e.second;
    return n;
  }

  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // Π m! over the support.
  Rational factorial() const {
    Rational r = 1;
    for (const auto& e : entries_) r *= mirp::factorial(e.second);
    return r;
  }

  bool contains(const Multiset& o) const {
    for (const auto& [x, m] : o.entries_)
      if (count(x) < m) return false;
    return true;
  }

  Multiset operator+(const Multiset& o) const {
    Multiset r = *this;
    for (const auto& [x, m] : o.entries_) r.add(x, m);
    return r;
  }

  std::optional<Multiset> minus(const Multiset& o) const {
    if (!contains(o)) return std::nullopt;
    Multiset r = *this;
    for (const auto& [x, m] : o.entries_) r.add(x, -m);
    return r;
  }

  // Elements listed with repetition, in sorted order.
  std::vector<T> flatten() const {
    std::vector<T> out;
    for (const auto& [x, m] : entries_)
      for (int i = 0; i < m; ++i) out.push_back(x);
    return out;
  }

  auto operator<=>(const Multiset&) const = default;
  bool operator==(const Multiset&) const = default;

 private:
  std::vector<Entry> entries_;
};

// All sub-multisets of s (including empty and s itself), in a fixed order.
template <class T>
std::vector<Multiset<T>> sub_multisets(const Multiset<T>& s) {
  std::vector<Multiset<T>> out{Multiset<T>{}};
  for (const auto& [x, m] : s.entries()) {
    std::vector<Multiset<T>> next;
    for (const auto& base : out)
      for (int j = 0; j <= m; ++j) {
        Multiset<T> b = base;
        if (j) b.add(x, j);
        next.push_back(std::move(b));
      }
    out = std::move(next);
  }
  return out;
}

// Π_x binom(s(x), t(x)) for t ⊆ s.
template <class T>
Rational binomial(const Multiset<T>& s, const Multiset<T>& t) {
  return s.factorial() / (t.factorial() * s.minus(t)->factorial());
}

}  // namespace mirp
