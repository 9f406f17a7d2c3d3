#pragma once

// Quantitative side of the existence theory for the mixed-order Caputo SIS
// system: the comparison function G, invariance boxes with their horizons,
// and the delayed Picard approximants used to build solutions.

#include <limits>

#include "fracsis/core.hpp"

namespace fracsis {

struct InvarianceBox {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
  double epsilon = 0.0;
  double horizon = 0.0;

  bool contains(double x, double y) const { return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi; }
};

/// G(t) = max_i t^{alpha_i} / Gamma(alpha_i + 1).
double g_bound(double t, const CaputoOrders& orders);

/// Smallest T > 0 with G(T) = target, by bisection. G is continuous and
/// strictly increasing with G(0) = 0, so the root is unique.
double solve_g_bound(double target, const CaputoOrders& orders);

/// Guaranteed existence horizon: +inf when gamma >= beta, otherwise the T
/// solving G(T) = 1/(3(beta+gamma)) for s0 >= i0 and
/// G(T) = s0 / ((s0 + 2 i0)(beta + gamma)) for s0 < i0.
double existence_horizon(const EpidemicParams& params, const CaputoOrders& orders);

/// Box around (s0, i0) left invariant by the Volterra map, with its horizon.
///
/// For gamma >= beta the caller's epsilon in (0, 1) is used and the horizon
/// solves G(T)(1 + eps) gamma = eps. For beta > gamma epsilon is forced to
/// min{1/2, s0 / (2 i0)} and the horizon solves G(T)(beta + gamma)(1 + eps) = eps.
InvarianceBox invariance_box(const EpidemicParams& params, const CaputoOrders& orders, double epsilon = 0.5);

/// n-th delayed Picard approximant on the grid, with delay grid.t_end / n.
/// Frozen at (s0, i0) on [0, t_end / n]; beyond that each component is the
/// Volterra integral truncated at t - t_end / n, integrated with the
/// product-rectangle rule (left-point value of f, exact kernel integral).
/// Throws DomainError if grid.t_end exceeds the existence horizon.
Trajectory picard_approximant(const EpidemicParams& params, const CaputoOrders& orders, std::size_t n,
                              const GridSpec& grid);

}  // namespace fracsis
