#include "mirp/roughpath/translate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mirp/kernels/kernels.hpp"

namespace mirp::rp {

TranslationMatrix TranslationMatrix::from_exact(const algebra::Endo<MultiIndex>& e, const std::vector<MultiIndex>& betas) {
  TranslationMatrix T;
  T.betas = betas;
  T.entry.assign(betas.size(), std::vector<double>(betas.size(), 0.0));
  auto index = [&](const MultiIndex& b) {
    auto it = std::find(betas.begin(), betas.end(), b);
    return it == betas.end() ? -1 : static_cast<int>(it - betas.begin());
  };
  for (const auto& [col, image] : e.columns()) {
    const int j = index(col);
    if (j < 0) continue;
    for (const auto& [row, v] : image) {
      const int i = index(row);
      if (i < 0) throw std::logic_error("translation produced a row outside the basis: " + mi::to_string(row));
      T.entry[i][j] = v.get_d();
    }
  }
  return T;
}

TranslationMatrix TranslationMatrix::build(const mi::TranslationSpec& spec, int N) {
  return from_exact(mi::rho_tilde_exp(spec, N), signature_betas(spec.labels, N));
}

SignatureGrid translate(const SignatureGrid& sig, const TranslationMatrix& T) {
  if (T.betas != sig.betas) throw std::invalid_argument("translation matrix does not match the signature's basis");
  SignatureGrid out = sig;
  const auto& k = kernels::active();
  for (std::size_t b = 0; b < sig.bases.size(); ++b) {
    const std::size_t n = sig.data[b].empty() ? 0 : sig.data[b][0].size();
    for (std::size_t i = 0; i < sig.betas.size(); ++i) {
      std::vector<double> v(n, 0.0);
      for (std::size_t j = 0; j < sig.betas.size(); ++j)
        if (T.entry[i][j] != 0.0) k.axpy(v.data(), T.entry[i][j], sig.data[b][j].data(), n);
      out.data[b][i] = std::move(v);
    }
  }
  return out;
}

SignatureGrid translate(const SignatureGrid& sig, const mi::TranslationSpec& spec) {
  if (spec.labels != sig.labels) throw std::invalid_argument("translation spec and signature have different labels");
  return translate(sig, TranslationMatrix::build(spec, sig.N));
}

namespace {

std::vector<std::vector<double>> hierarchy_at(const Driver& d, const SignatureGrid& shape, const ChenTable& table,
                                              const std::vector<std::vector<double>>& pi, int s) {
  const auto& k = kernels::active();
  const std::size_t n = d.M - s + 1;
  const int L = d.labels();
  std::vector<const double*> xs;
  for (int l = 0; l < L; ++l) xs.push_back(d.x[l].data() + s);
  std::vector<std::vector<double>> Y(shape.betas.size());
  std::vector<double> prod(n);
  for (std::size_t b = 0; b < shape.betas.size(); ++b) {
    std::vector<std::vector<double>> g(L);
    std::vector<const double*> gp(L, nullptr);
    for (const auto& term : table.rows()[b]) {
      if (term.factors.empty()) continue;
      bool any = false;
      for (int l = 0; l < L; ++l) any = any || pi[l][term.gamma] != 0.0;
      if (!any) continue;
      std::fill(prod.begin(), prod.end(), 1.0);
      for (const auto& [i, m] : term.factors)
        for (int j = 0; j < m; ++j) k.multiply(prod.data(), prod.data(), Y[i].data(), n);
      for (int l = 0; l < L; ++l) {
        const double w = term.coef * pi[l][term.gamma];
        if (w == 0.0) continue;
        if (g[l].empty()) g[l].assign(n, 0.0);
        k.axpy(g[l].data(), w, prod.data(), n);
        gp[l] = g[l].data();
      }
    }
    std::vector<double> y = stieltjes(gp, xs, n, shape.quad);
    // The I = 0 term has a constant integrand: exact increments.
    for (int l = 0; l < L; ++l) {
      const double w = pi[l][b];
      if (w == 0.0) continue;
      for (std::size_t o = 0; o < n; ++o) y[o] += w * (d.x[l][s + o] - d.x[l][s]);
    }
    Y[b] = std::move(y);
  }
  return Y;
}

}  // namespace

SignatureGrid translated_hierarchy(const Driver& d, const mi::TranslationSpec& spec, const SignatureOptions& opt) {
  d.validate();
  spec.validate();
  if (spec.labels != d.labels()) throw std::invalid_argument("translation spec and driver have different labels");
  if (opt.N < 1) throw std::invalid_argument("truncation N must be at least 1");
  SignatureGrid sig;
  sig.N = opt.N;
  sig.labels = d.labels();
  sig.M = d.M;
  sig.t0 = d.t0;
  sig.t1 = d.t1;
  sig.quad = opt.quad;
  sig.betas = signature_betas(d.labels(), opt.N);
  sig.bases = opt.bases.empty() ? strided_bases(d.M) : opt.bases;
  std::sort(sig.bases.begin(), sig.bases.end());
  sig.bases.erase(std::unique(sig.bases.begin(), sig.bases.end()), sig.bases.end());
  for (int s : sig.bases)
    if (s < 0 || s > d.M) throw std::invalid_argument("base point " + std::to_string(s) + " is off the grid");

  ChenTable table(d.labels(), opt.N);
  // π_ℓ = z_{(ℓ,0)} + c_ℓ on the basis.
  std::vector<std::vector<double>> pi(d.labels(), std::vector<double>(sig.betas.size(), 0.0));
  for (int l = 0; l < d.labels(); ++l) {
    pi[l][sig.beta_index(mi::node(l, 0))] += 1.0;
    for (const auto& [gamma, v] : spec.c_label(l)) {
      const int i = mi::length(gamma) <= opt.N ? sig.beta_index(gamma) : -1;
      if (i >= 0) pi[l][i] += v.get_d();
    }
  }
  sig.data.resize(sig.bases.size());
  const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(sig.bases.size())));
  auto work = [&](int first) {
    for (std::size_t b = first; b < sig.bases.size(); b += threads)
      sig.data[b] = hierarchy_at(d, sig, table, pi, sig.bases[b]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work, i);
    for (auto& t : pool) t.join();
  }
  return sig;
}

HierarchyCheck translated_hierarchy_check(const Driver& d, const mi::TranslationSpec& spec, const SignatureOptions& opt) {
  const auto via_matrix = translate(build_signature(d, opt), spec);
  const auto direct = translated_hierarchy(d, spec, opt);
  HierarchyCheck r;
  for (std::size_t b = 0; b < direct.bases.size(); ++b)
    for (std::size_t i = 0; i < direct.betas.size(); ++i)
      for (std::size_t o = 0; o < direct.data[b][i].size(); ++o) {
        const double e = std::abs(direct.data[b][i][o] - via_matrix.data[b][i][o]);
        if (e > r.max_discrepancy) {
          r.max_discrepancy = e;
          r.s = direct.bases[b];
          r.t = direct.bases[b] + static_cast<int>(o);
          r.beta = direct.betas[i];
        }
      }
  return r;
}

}  // namespace mirp::rp
