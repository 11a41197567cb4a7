#pragma once

#include <string>
#include <vector>

#include "mirp/multiindex/multiindex.hpp"
#include "mirp/roughpath/driver.hpp"

namespace mirp::rp {

using mi::MultiIndex;

enum class Quadrature { trapezoid, simpson };

std::string quadrature_name(Quadrature q);
Quadrature parse_quadrature(const std::string& s);  // "trap" | "trapezoid" | "simpson"

// X_{s,t,β} for populated β with ⟨β⟩ ≤ N, for base points s and every grid node t ≥ s.
struct SignatureGrid {
  int N = 0;
  int labels = 0;
  int M = 0;
  double t0 = 0, t1 = 1;
  Quadrature quad = Quadrature::trapezoid;
  std::vector<MultiIndex> betas;  // ordered by length, then canonically
  std::vector<int> bases;         // ascending grid nodes
  // data[b][i][t - bases[b]]
  std::vector<std::vector<std::vector<double>>> data;

  double h() const { return (t1 - t0) / M; }
  double time(int m) const;
  int beta_index(const MultiIndex& beta) const;  // -1 when absent
  bool has_base(int s) const;
  // Throws std::out_of_range when s is not a base point.
  int base_index(int s) const;
  double value(int s, int t, int beta) const;
  double value(int s, int t, const MultiIndex& beta) const;
  // All β at once, in the order of `betas`.
  std::vector<double> at(int s, int t) const;
  const std::vector<double>& series(int s, int beta) const { return data[base_index(s)][beta]; }
};

// Populated β with ⟨β⟩ ≤ N, ordered by length, then canonically.
std::vector<MultiIndex> signature_betas(int labels, int N);

// count + 1 evenly spaced nodes from 0 to M (fewer when M < count).
std::vector<int> strided_bases(int M, int count = 8);

struct SignatureOptions {
  int N = 1;
  Quadrature quad = Quadrature::trapezoid;
  std::vector<int> bases;  // empty: strided_bases(M)
  int threads = 1;         // bases are independent; results do not depend on this
};

// The hierarchy X_{st,β} = Σ_{(ℓ,k)} Σ_{e_{(ℓ,k)}+β₁+…+β_k=β} ∫_s^t Π X_{su,βⱼ} dX^ℓ_u, level by level.
SignatureGrid build_signature(const Driver& d, const SignatureOptions& opt);

// Σ_ℓ ∫ g_ℓ dX^ℓ from the first of n nodes to each later one; out[0] = 0.
// A null g_ℓ is zero. Labels are summed inside each step in label order.
std::vector<double> stieltjes(const std::vector<const double*>& g, const std::vector<const double*>& x,
                              std::size_t n, Quadrature quad);

}  // namespace mirp::rp
