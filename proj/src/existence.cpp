#include "fracsis/existence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracsis {

double g_bound(double t, const CaputoOrders& orders) {
  if (!(t >= 0.0)) throw DomainError("g_bound requires t >= 0");
  if (t == 0.0) return 0.0;
  const double g1 = std::pow(t, orders.alpha1) / gamma_function(orders.alpha1 + 1.0);
  const double g2 = std::pow(t, orders.alpha2) / gamma_function(orders.alpha2 + 1.0);
  return std::max(g1, g2);
}

double solve_g_bound(double target, const CaputoOrders& orders) {
  orders.validate();
  if (!(target > 0.0) || !std::isfinite(target)) throw DomainError("solve_g_bound requires a positive finite target");
  double lo = 0.0;
  double hi = 1.0;
  while (g_bound(hi, orders) < target) {
    lo = hi;
    hi *= 2.0;
  }
  // Stop at the resolution of double; 200 halvings is far more than needed.
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (g_bound(mid, orders) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double g_lo = g_bound(lo, orders);
  const double g_hi = g_bound(hi, orders);
  return std::abs(g_lo - target) < std::abs(g_hi - target) ? lo : hi;
}

double existence_horizon(const EpidemicParams& params, const CaputoOrders& orders) {
  params.validate();
  orders.validate();
  if (params.gamma >= params.beta) return std::numeric_limits<double>::infinity();
  const double rate = params.beta + params.gamma;
  const double target = params.s0 >= params.i0 ? 1.0 / (3.0 * rate)
                                               : params.s0 / ((params.s0 + 2.0 * params.i0) * rate);
  return solve_g_bound(target, orders);
}

InvarianceBox invariance_box(const EpidemicParams& params, const CaputoOrders& orders, double epsilon) {
  params.validate();
  orders.validate();
  if (!(params.s0 > 0.0 && params.i0 > 0.0)) throw DomainError("invariance_box requires s0 > 0 and i0 > 0");

  InvarianceBox box;
  const double x0 = params.s0;
  const double y0 = params.i0;
  if (params.gamma >= params.beta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      std::ostringstream os;
      os << "epsilon must lie in (0, 1) (got " << epsilon << ")";
      throw DomainError(os.str());
    }
    box.epsilon = epsilon;
    box.horizon = solve_g_bound(epsilon / ((1.0 + epsilon) * params.gamma), orders);
    box.x_lo = x0;
  } else {
    box.epsilon = std::min(0.5, 0.5 * x0 / y0);
    box.horizon = solve_g_bound(box.epsilon / ((1.0 + box.epsilon) * (params.beta + params.gamma)), orders);
    box.x_lo = x0 - box.epsilon * y0;
  }
  box.x_hi = x0 + box.epsilon * y0;
  box.y_lo = (1.0 - box.epsilon) * y0;
  box.y_hi = (1.0 + box.epsilon) * y0;
  return box;
}

Trajectory picard_approximant(const EpidemicParams& params, const CaputoOrders& orders, std::size_t n,
                              const GridSpec& grid) {
  params.validate();
  orders.validate();
  grid.validate();
  if (n < 1) throw DomainError("approximant index must be at least 1");
  const double horizon = existence_horizon(params, orders);
  if (grid.t_end > horizon * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "t_end " << grid.t_end << " exceeds the existence horizon " << horizon;
    throw DomainError(os.str());
  }

  const double delay = grid.t_end / static_cast<double>(n);
  const double slack = 1e-12 * grid.t_end;
  const double a1 = orders.alpha1;
  const double a2 = orders.alpha2;
  const double g1 = gamma_function(a1 + 1.0);
  const double g2 = gamma_function(a2 + 1.0);

  Trajectory traj;
  traj.model_tag = ModelTag::Caputo;
  traj.reserve(grid.n_steps + 1);
  std::vector<double> rates;
  rates.reserve(grid.n_steps + 1);

  for (std::size_t m = 0; m <= grid.n_steps; ++m) {
    const double t = grid.time(m);
    double x = params.s0;
    double y = params.i0;
    if (t > delay + slack) {
      const double upper = t - delay;
      double sx = 0.0;
      double sy = 0.0;
      for (std::size_t k = 0; k < m && traj.times[k] < upper; ++k) {
        const double left = traj.times[k];
        const double right = std::min(grid.time(k + 1), upper);
        sx += rates[k] * (std::pow(t - left, a1) - std::pow(t - right, a1));
        sy += rates[k] * (std::pow(t - left, a2) - std::pow(t - right, a2));
      }
      x += sx / g1;
      y -= sy / g2;
    }
    traj.push_back(t, x, y);
    rates.push_back(sis_field(x, y, params));
  }
  return traj;
}

}  // namespace fracsis
