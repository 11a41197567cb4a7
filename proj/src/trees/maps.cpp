#include "mirp/trees/maps.hpp"

#include <functional>
#include <stdexcept>

namespace mirp::trees {

TreeSeries tree_translate(const std::vector<TreeSeries>& v, const Tree& t) {
  if (t.label() >= static_cast<int>(v.size()))
    throw std::invalid_argument("translation has no entry for label " + std::to_string(t.label()));
  TreeSeries root(Tree::leaf(t.label()));
  root += v[t.label()];
  std::vector<TreeSeries> images;
  for (const auto& c : t.children()) images.push_back(tree_translate(v, c));

  TreeSeries out;
  std::vector<Tree> picked;
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t j, const Rational& c) {
    if (j == images.size()) {
      for (const auto& [r, cr] : root) out.add_scaled(simultaneous_graft(picked, r), c * cr);
      return;
    }
    for (const auto& [x, cx] : images[j]) {
      picked.push_back(x);
      rec(j + 1, c * cx);
      picked.pop_back();
    }
  };
  rec(0, Rational(1));
  return out;
}

TreeSeries tree_translate(const std::vector<TreeSeries>& v, const TreeSeries& s) {
  return s.map_linear([&](const Tree& t) { return tree_translate(v, t); });
}

LinComb<mi::RSymbol> psi_translation(const std::vector<TreeSeries>& v) {
  LinComb<mi::RSymbol> out;
  for (std::size_t l = 0; l < v.size(); ++l)
    for (const auto& [t, c] : v[l]) {
      auto [sg, b] = psi(t);
      out.add(mi::RSymbol{b, static_cast<int>(l)}, c * sg);
    }
  return out;
}

double elementary_differential(const Tree& t, const mi::Nonlinearity& a, double y) {
  const int k = static_cast<int>(t.children().size());
  double r = a.taylor(t.label(), k, y) * factorial(k).get_d();
  for (const auto& c : t.children()) r *= elementary_differential(c, a, y);
  return r;
}

}  // namespace mirp::trees
