#pragma once

#include <vector>

#include "mirp/multiindex/nonlinearity.hpp"
#include "mirp/roughpath/driver.hpp"
#include "mirp/roughpath/signature.hpp"

namespace mirp::trees {

struct ExpansionOptions {
  int N = 2;
  double H0 = 0;                                     // first interval; 0 means t1 − t0
  int halvings = 5;                                  // intervals H = H0/2^j, j = 0..halvings
  int M = 0;                                         // local grid size per interval; 0 uses d.M
  rp::Quadrature quad = rp::Quadrature::simpson;
  double ode_tol = 1e-12;
};

struct ExpansionRow {
  double H = 0;
  double increment = 0;   // Y_{s+H} − Y_s from the ODE solver
  double mi_sum = 0;      // Σ_β X_β z^β[a, Y_s], ⟨β⟩ ≤ N
  double tree_sum = 0;    // Σ_τ X̃ᴮʳ[τ] τ[a, Y_s], |τ| ≤ N
  double mi_remainder = 0;
  double tree_remainder = 0;
};

struct ExpansionReport {
  int N = 0;
  double s = 0, y_s = 0;
  std::vector<ExpansionRow> rows;
  // Least-squares slope of log remainder against log H.
  double mi_order = 0, tree_order = 0;
  std::vector<double> pairwise_orders;  // log2 of successive multi-index remainder ratios
  double max_sum_gap = 0;               // max |mi_sum − tree_sum|
};

// dY = Σ_ℓ a_ℓ(Y) dX^ℓ from Y_{t0} = y0, solved as an ODE along the closed-form
// driver; the truncated expansions are evaluated on [t0, t0 + H].
// Throws std::invalid_argument without closed forms, std::runtime_error if the solver fails.
ExpansionReport expansion_check(const rp::Driver& d, const mi::Nonlinearity& a, double y0, const ExpansionOptions& opt);

// Y_t for the driver's closed forms, adaptive Dormand–Prince with abs/rel tolerance tol.
double solve_rde(const rp::Driver& d, const mi::Nonlinearity& a, double y0, double t_from, double t_to, double tol);

}  // namespace mirp::trees
