#include "mirp/trees/branched.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mirp::trees {

int BranchedGrid::tree_index(const Tree& t) const {
  auto it = std::lower_bound(trees.begin(), trees.end(), t);
  return it != trees.end() && *it == t ? static_cast<int>(it - trees.begin()) : -1;
}

int BranchedGrid::base_index(int s) const {
  auto it = std::lower_bound(bases.begin(), bases.end(), s);
  if (it == bases.end() || *it != s) throw std::out_of_range("node " + std::to_string(s) + " is not a base point");
  return static_cast<int>(it - bases.begin());
}

double BranchedGrid::value(int s, int t, int tree) const {
  if (t < s) throw std::invalid_argument("branched value needs s <= t");
  return data[base_index(s)][tree][t - s];
}

double BranchedGrid::normalized(int s, int t, int tree) const {
  return value(s, t, tree) / symmetry_factor(trees[tree]).get_d();
}

BranchedGrid branched_signature(const rp::Driver& d, const BranchedOptions& opt) {
  d.validate();
  if (opt.n < 1) throw std::invalid_argument("branched signature needs n >= 1");
  BranchedGrid g;
  g.n = opt.n;
  g.labels = d.labels();
  g.M = d.M;
  g.t0 = d.t0;
  g.t1 = d.t1;
  g.quad = opt.quad;
  g.trees = enumerate_trees(g.labels, opt.n);
  g.bases = opt.bases.empty() ? rp::strided_bases(d.M) : opt.bases;
  std::sort(g.bases.begin(), g.bases.end());
  g.bases.erase(std::unique(g.bases.begin(), g.bases.end()), g.bases.end());
  for (int s : g.bases)
    if (s < 0 || s > d.M) throw std::invalid_argument("base point outside the grid");

  for (int s : g.bases) {
    const std::size_t len = static_cast<std::size_t>(d.M - s + 1);
    std::vector<const double*> x;
    for (const auto& xl : d.x) x.push_back(xl.data() + s);
    std::vector<std::vector<double>> vals(g.trees.size());
    std::vector<double> integrand(len);
    for (std::size_t i = 0; i < g.trees.size(); ++i) {
      const Tree& t = g.trees[i];
      if (t.nodes() == 1) {
        // Level 1 as exact sample differences, like the multi-index hierarchy.
        vals[i].resize(len);
        for (std::size_t m = 0; m < len; ++m) vals[i][m] = x[t.label()][m] - x[t.label()][0];
        continue;
      }
      std::fill(integrand.begin(), integrand.end(), 1.0);
      for (const auto& c : t.children()) {
        const auto& cv = vals[g.tree_index(c)];
        for (std::size_t m = 0; m < len; ++m) integrand[m] *= cv[m];
      }
      std::vector<const double*> gl(g.labels, nullptr);
      gl[t.label()] = integrand.data();
      vals[i] = rp::stieltjes(gl, x, len, opt.quad);
    }
    g.data.push_back(std::move(vals));
  }
  return g;
}

DictionaryReport dictionary_check(const rp::SignatureGrid& sig, const BranchedGrid& br, double floor) {
  if (sig.labels != br.labels || sig.M != br.M) throw std::invalid_argument("signature and branched grid differ");
  if (sig.N > br.n) throw std::invalid_argument("branched grid has fewer nodes than the signature levels");
  DictionaryReport r;
  for (std::size_t bi = 0; bi < sig.betas.size(); ++bi) {
    const MultiIndex& beta = sig.betas[bi];
    std::vector<std::pair<int, double>> cls;
    for (const auto& t : fertility_class(beta)) cls.emplace_back(br.tree_index(t), symmetry_factor(t).get_d());
    const double sb = mi::sigma(beta).get_d();
    for (int s : sig.bases) {
      if (!std::binary_search(br.bases.begin(), br.bases.end(), s)) continue;
      std::vector<double> diff;
      double scale = 0;
      for (int t = s; t <= sig.M; ++t) {
        const double lhs = sig.value(s, t, static_cast<int>(bi));
        double rhs = 0;
        for (const auto& [ti, st] : cls) rhs += br.value(s, t, ti) / st;
        rhs *= sb;
        diff.push_back(std::abs(lhs - rhs));
        scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
      }
      for (int t = s; t <= sig.M; ++t) {
        const double dv = diff[t - s];
        ++r.entries;
        r.max_abs = std::max(r.max_abs, dv);
        if (scale >= floor && dv / scale > r.max_rel) {
          r.max_rel = dv / scale;
          r.s = s;
          r.t = t;
          r.beta = beta;
        }
      }
    }
  }
  return r;
}

}  // namespace mirp::trees
