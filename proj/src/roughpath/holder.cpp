#include "mirp/roughpath/holder.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mirp::rp {

PairPolicy PairPolicy::parse(const std::string& s, std::uint64_t seed) {
  PairPolicy p;
  p.seed = seed;
  if (s == "dyadic") return p;
  if (s == "all") {
    p.kind = Kind::all;
    return p;
  }
  if (s.rfind("random:", 0) == 0) {
    p.kind = Kind::random;
    const std::string n = s.substr(7);
    std::size_t used = 0;
    try {
      p.count = std::stoi(n, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == n.size() && !n.empty() && p.count > 0) return p;
  }
  throw std::invalid_argument("unknown pair policy '" + s + "' (expected dyadic, all or random:<k> with k > 0)");
}

std::string PairPolicy::name() const {
  switch (kind) {
    case Kind::dyadic:
      return "dyadic";
    case Kind::all:
      return "all";
    case Kind::random:
      return "random:" + std::to_string(count);
  }
  return "?";
}

std::vector<std::pair<int, int>> sample_pairs(const SignatureGrid& sig, const PairPolicy& policy) {
  std::vector<std::pair<int, int>> out;
  std::mt19937_64 rng(policy.seed);
  for (int s : sig.bases) {
    if (s >= sig.M) continue;
    switch (policy.kind) {
      case PairPolicy::Kind::dyadic:
        for (long long w = 1; s + w <= sig.M; w *= 2) out.emplace_back(s, static_cast<int>(s + w));
        out.emplace_back(s, sig.M);
        break;
      case PairPolicy::Kind::all:
        for (int t = s + 1; t <= sig.M; ++t) out.emplace_back(s, t);
        break;
      case PairPolicy::Kind::random: {
        std::uniform_int_distribution<int> pick(s + 1, sig.M);
        for (int i = 0; i < policy.count; ++i) out.emplace_back(s, pick(rng));
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double HolderExponent::operator()(const MultiIndex& beta) const {
  double e = 0;
  for (const auto& [nd, m] : beta) {
    auto it = label_alpha.find(nd.label);
    e += (it == label_alpha.end() ? alpha : it->second) * m;
  }
  return e;
}

std::vector<HolderRow> holder_report(const SignatureGrid& sig, const HolderExponent& e,
                                     const std::vector<std::pair<int, int>>& pairs) {
  std::vector<HolderRow> rows;
  for (const auto& beta : sig.betas) rows.push_back({beta, e(beta), 0, 0, 0});
  for (const auto& [s, t] : pairs) {
    if (t <= s) continue;
    const double dt = std::abs(sig.time(t) - sig.time(s));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double q = std::abs(sig.value(s, t, static_cast<int>(i))) / std::pow(dt, rows[i].exponent);
      if (q > rows[i].sup) {
        rows[i].sup = q;
        rows[i].s = s;
        rows[i].t = t;
      }
    }
  }
  return rows;
}

}  // namespace mirp::rp
