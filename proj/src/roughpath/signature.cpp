#include "mirp/roughpath/signature.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <thread>

#include "mirp/kernels/kernels.hpp"

namespace mirp::rp {

std::string quadrature_name(Quadrature q) { return q == Quadrature::simpson ? "simpson" : "trapezoid"; }

Quadrature parse_quadrature(const std::string& s) {
  if (s == "trap" || s == "trapezoid") return Quadrature::trapezoid;
  if (s == "simpson") return Quadrature::simpson;
  throw std::invalid_argument("unknown quadrature '" + s + "' (expected trap or simpson)");
}

namespace {

bool beta_less(const MultiIndex& a, const MultiIndex& b) {
  const int la = mi::length(a), lb = mi::length(b);
  return la != lb ? la < lb : a < b;
}

}  // namespace

double SignatureGrid::time(int m) const {
  if (m == M) return t1;
  return t0 + (t1 - t0) * static_cast<double>(m) / M;
}

int SignatureGrid::beta_index(const MultiIndex& beta) const {
  auto it = std::lower_bound(betas.begin(), betas.end(), beta, beta_less);
  if (it == betas.end() || !(*it == beta)) return -1;
  return static_cast<int>(it - betas.begin());
}

bool SignatureGrid::has_base(int s) const { return std::binary_search(bases.begin(), bases.end(), s); }

int SignatureGrid::base_index(int s) const {
  auto it = std::lower_bound(bases.begin(), bases.end(), s);
  if (it == bases.end() || *it != s) throw std::out_of_range("grid node " + std::to_string(s) + " is not a base point");
  return static_cast<int>(it - bases.begin());
}

double SignatureGrid::value(int s, int t, int beta) const {
  if (t < s) throw std::invalid_argument("signature pair needs s <= t");
  if (t > M) throw std::out_of_range("grid node " + std::to_string(t) + " is past the end of the grid");
  return data[base_index(s)][beta][t - s];
}

double SignatureGrid::value(int s, int t, const MultiIndex& beta) const {
  if (mi::length(beta) > N) throw std::out_of_range("multi-index " + mi::to_string(beta) + " exceeds the truncation");
  const int i = beta_index(beta);
  return i < 0 ? 0.0 : value(s, t, i);
}

std::vector<double> SignatureGrid::at(int s, int t) const {
  std::vector<double> out(betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) out[i] = value(s, t, static_cast<int>(i));
  return out;
}

std::vector<MultiIndex> signature_betas(int labels, int N) {
  auto out = mi::enumerate_populated(labels, N);
  std::sort(out.begin(), out.end(), beta_less);
  return out;
}

std::vector<int> strided_bases(int M, int count) {
  std::vector<int> out;
  count = std::max(1, std::min(count, M));
  for (int i = 0; i <= count; ++i) out.push_back(static_cast<int>(static_cast<long long>(M) * i / count));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> stieltjes(const std::vector<const double*>& g, const std::vector<const double*>& x,
                              std::size_t n, Quadrature quad) {
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  std::vector<double> inc(n - 1, 0.0);
  if (quad == Quadrature::trapezoid || n == 2) {
    const auto& k = kernels::active();
    for (std::size_t l = 0; l < g.size(); ++l)
      if (g[l]) k.trapezoid_increments(inc.data(), g[l], x[l], n - 1);
  } else {
    // Quadratic interpolation of g and X on node triples, integrated exactly
    // over each half; on X(t) = t this is composite Simpson at even nodes.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const bool first_half = i % 2 == 0 && i + 2 < n;
      const std::size_t p = first_half ? i : i - 1;
      for (std::size_t l = 0; l < g.size(); ++l) {
        if (!g[l]) continue;
        const double* gg = g[l] + p;
        const double* xx = x[l] + p;
        const double d1 = xx[1] - xx[0], d2 = xx[2] - xx[1];
        double v;
        if (first_half)
          v = gg[0] * (d1 / 2 - d2 / 12) + gg[1] * (7 * d1 / 12 + d2 / 12) + gg[2] * (-d1 / 12);
        else
          v = gg[0] * (-d2 / 12) + gg[1] * (d1 / 12 + 7 * d2 / 12) + gg[2] * (-d1 / 12 + d2 / 2);
        inc[i] += v;
      }
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) out[i + 1] = out[i] + inc[i];
  return out;
}

namespace {

// One base point: the hierarchy for all β, as series over offsets.
class BaseBuilder {
 public:
  BaseBuilder(const Driver& d, const SignatureGrid& sig, int s) : d_(d), sig_(sig), s_(s), n_(d.M - s + 1) {}

  std::vector<std::vector<double>> run() {
    vals_.assign(sig_.betas.size(), {});
    std::vector<const double*> xs;
    for (int l = 0; l < d_.labels(); ++l) xs.push_back(d_.x[l].data() + s_);
    for (std::size_t i = 0; i < sig_.betas.size(); ++i) {
      const MultiIndex& beta = sig_.betas[i];
      if (mi::length(beta) == 1) {
        const int l = beta.entries().front().first.label;
        std::vector<double> v(n_);
        const double x0 = d_.x[l][s_];
        for (std::size_t o = 0; o < n_; ++o) v[o] = d_.x[l][s_ + o] - x0;
        vals_[i] = std::move(v);
        continue;
      }
      std::vector<std::vector<double>> g(d_.labels());
      std::vector<const double*> gp(d_.labels(), nullptr);
      for (const auto& [nd, m] : beta) {
        if (nd.k == 0) continue;
        MultiIndex rest = *beta.minus(MultiIndex::single(nd));
        const std::vector<double>* c = coefficient(nd.k, rest);
        if (!c) continue;
        auto& gl = g[nd.label];
        if (gl.empty()) gl.assign(n_, 0.0);
        kernels::active().axpy(gl.data(), 1.0, c->data(), n_);
        gp[nd.label] = gl.data();
      }
      vals_[i] = stieltjes(gp, xs, n_, sig_.quad);
    }
    return std::move(vals_);
  }

 private:
  // [z^δ] (Σ_β X_β z^β)^k as a series over offsets; null when identically zero.
  const std::vector<double>* coefficient(int k, const MultiIndex& delta) {
    if (mi::weight(delta) != k || mi::length(delta) < k) return nullptr;
    auto key = std::make_pair(k, delta);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second.get();
    std::unique_ptr<std::vector<double>> out;
    if (k == 1) {
      const int i = sig_.beta_index(delta);
      return i < 0 ? nullptr : &vals_[i];
    }
    for (const auto& gamma : sub_multisets(delta)) {
      if (gamma.empty() || gamma == delta || !mi::is_populated(gamma)) continue;
      const int i = sig_.beta_index(gamma);
      if (i < 0) continue;
      const std::vector<double>* rest = coefficient(k - 1, *delta.minus(gamma));
      if (!rest) continue;
      if (!out) out = std::make_unique<std::vector<double>>(n_, 0.0);
      kernels::active().multiply_accumulate(out->data(), 1.0, vals_[i].data(), rest->data(), n_);
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second.get();
  }

  const Driver& d_;
  const SignatureGrid& sig_;
  int s_;
  std::size_t n_;
  std::vector<std::vector<double>> vals_;
  std::map<std::pair<int, MultiIndex>, std::unique_ptr<std::vector<double>>> memo_;
};

}  // namespace

SignatureGrid build_signature(const Driver& d, const SignatureOptions& opt) {
  d.validate();
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
  sig.data.resize(sig.bases.size());

  const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(sig.bases.size())));
  auto work = [&](int first) {
    for (std::size_t b = first; b < sig.bases.size(); b += threads)
      sig.data[b] = BaseBuilder(d, sig, sig.bases[b]).run();
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

}  // namespace mirp::rp
