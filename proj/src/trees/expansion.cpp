#include "mirp/trees/expansion.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "mirp/trees/branched.hpp"
#include "mirp/trees/maps.hpp"

namespace mirp::trees {

namespace {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double solve_rde(const rp::Driver& d, const mi::Nonlinearity& a, double y0, double t_from, double t_to, double tol) {
  if (!d.forms) throw std::invalid_argument("the expansion check needs a closed-form driver");
  if (a.fields.size() < d.forms->size()) throw std::invalid_argument("nonlinearity has fewer fields than labels");
  if (t_to == t_from) return y0;
  using State = std::array<double, 1>;
  const auto& forms = *d.forms;
  auto rhs = [&](const State& y, State& dy, double t) {
    dy[0] = 0;
    for (std::size_t l = 0; l < forms.size(); ++l) dy[0] += a.fields[l](y[0]) * forms[l].derivative(t);
  };
  namespace ode = boost::numeric::odeint;
  State y{y0};
  try {
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<State>());
    ode::integrate_adaptive(stepper, rhs, y, t_from, t_to, (t_to - t_from) / 64);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("integrator failure: ") + e.what());
  }
  if (!std::isfinite(y[0])) throw std::runtime_error("integrator failure: non-finite state");
  return y[0];
}

ExpansionReport expansion_check(const rp::Driver& d, const mi::Nonlinearity& a, double y0, const ExpansionOptions& opt) {
  if (!d.forms) throw std::invalid_argument("the expansion check needs a closed-form driver");
  if (opt.N < 1) throw std::invalid_argument("expansion needs N >= 1");
  if (opt.halvings < 1) throw std::invalid_argument("expansion needs at least one halving");
  const int M = opt.M > 0 ? opt.M : d.M;
  if (M < 2) throw std::invalid_argument("expansion needs a local grid of at least 2 steps");
  const double H0 = opt.H0 > 0 ? opt.H0 : d.t1 - d.t0;
  if (H0 > d.t1 - d.t0) throw std::invalid_argument("expansion interval longer than the driver's time range");

  ExpansionReport r;
  r.N = opt.N;
  r.s = d.t0;
  r.y_s = y0;
  const auto betas = rp::signature_betas(d.labels(), opt.N);
  std::vector<double> std_x, mi_y, tree_y;
  for (int j = 0; j <= opt.halvings; ++j) {
    ExpansionRow row;
    row.H = H0 / std::ldexp(1.0, j);
    const rp::Driver local = rp::Driver::sample(*d.forms, M, r.s, r.s + row.H);
    rp::SignatureOptions so;
    so.N = opt.N;
    so.quad = opt.quad;
    so.bases = {0};
    const auto sig = rp::build_signature(local, so);
    BranchedOptions bo;
    bo.n = opt.N;
    bo.quad = opt.quad;
    bo.bases = {0};
    const auto br = branched_signature(local, bo);

    row.increment = solve_rde(d, a, y0, r.s, r.s + row.H, opt.ode_tol) - y0;
    for (std::size_t i = 0; i < betas.size(); ++i)
      row.mi_sum += sig.value(0, M, static_cast<int>(i)) * mi::z_functional(betas[i], a, y0);
    for (std::size_t i = 0; i < br.trees.size(); ++i)
      row.tree_sum += br.normalized(0, M, static_cast<int>(i)) * elementary_differential(br.trees[i], a, y0);
    row.mi_remainder = std::abs(row.increment - row.mi_sum);
    row.tree_remainder = std::abs(row.increment - row.tree_sum);
    r.max_sum_gap = std::max(r.max_sum_gap, std::abs(row.mi_sum - row.tree_sum));
    std_x.push_back(std::log(row.H));
    mi_y.push_back(std::log(row.mi_remainder));
    tree_y.push_back(std::log(row.tree_remainder));
    if (j > 0) r.pairwise_orders.push_back(std::log2(r.rows.back().mi_remainder / row.mi_remainder));
    r.rows.push_back(row);
  }
  r.mi_order = fit_slope(std_x, mi_y);
  r.tree_order = fit_slope(std_x, tree_y);
  return r;
}

}  // namespace mirp::trees
