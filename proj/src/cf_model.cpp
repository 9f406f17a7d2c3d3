#include "fracsis/cf_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracsis {

namespace {

double p_alpha_of(double s, double i, const EpidemicParams& params, double alpha, double m) {
  const double n = s + i;
  const double drift = n > 0.0 ? params.beta - params.gamma - params.beta * i / n : 0.0;
  return m * s + alpha * i + (1.0 - alpha) * drift * i;
}

// beta P / (alpha (beta - gamma) + M gamma), without checking the order assumptions.
double endemic_total(const EpidemicParams& params, double alpha, double m) {
  const double p = p_alpha_of(params.s0, params.i0, params, alpha, m);
  return params.beta * p / (alpha * (params.beta - params.gamma) + m * params.gamma);
}

void require_endemic(const EpidemicParams& params) {
  if (!(params.beta > params.gamma)) {
    std::ostringstream os;
    os << "alpha inversion requires R = beta / gamma > 1 (got " << params.reproduction_number() << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

std::string_view to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::Increasing:
      return "increasing";
    case Monotonicity::Decreasing:
      return "decreasing";
    case Monotonicity::Constant:
      return "constant";
  }
  return "unknown";
}

CFConstants cf_constants(const EpidemicParams& params, const CFOrder& order) {
  order.validate(params);
  const double a = order.alpha;
  const double m = order.m_alpha;
  CFConstants c;
  c.b_alpha = 0.5 * (a + m + (1.0 - a) * (params.beta - params.gamma));
  c.c_alpha = m * (a - (1.0 - a) * params.gamma);
  c.p_alpha = p_alpha_of(params.s0, params.i0, params, a, m);
  return c;
}

double cf_invariant(double s, double i, const EpidemicParams& params, const CFOrder& order) {
  return p_alpha_of(s, i, params, order.alpha, order.m_alpha);
}

double g_alpha_radicand(double x, const CFConstants& consts, const CFOrder& order) {
  const double half_p = 0.5 * consts.p_alpha;
  const double shifted = consts.b_alpha * x - half_p;
  const double r = shifted * shifted - consts.c_alpha * x * x + order.m_alpha * consts.p_alpha * x;
  // Provably nonnegative; anything below the tolerance is a bug, not rounding.
  const double tol = 1e-12 * std::max(1.0, consts.p_alpha * consts.p_alpha);
  if (r < -tol) {
    std::ostringstream os;
    os << "g_alpha radicand is negative (" << r << ") at x = " << x;
    throw DomainError(os.str());
  }
  return std::max(r, 0.0);
}

double g_alpha(double x, const CFConstants& consts, const CFOrder& order) {
  const double root = std::sqrt(g_alpha_radicand(x, consts, order));
  return (-consts.b_alpha * x + 0.5 * consts.p_alpha + root) / order.m_alpha;
}

double g_alpha_prime(double x, const CFConstants& consts, const CFOrder& order) {
  const double r = g_alpha_radicand(x, consts, order);
  const double dr = 2.0 * consts.b_alpha * (consts.b_alpha * x - 0.5 * consts.p_alpha) -
                    2.0 * consts.c_alpha * x + order.m_alpha * consts.p_alpha;
  return (-consts.b_alpha + dr / (2.0 * std::sqrt(r))) / order.m_alpha;
}

double g_alpha_second(double x, const CFConstants& consts, const CFOrder& order) {
  const double r = g_alpha_radicand(x, consts, order);
  const double dr = 2.0 * consts.b_alpha * (consts.b_alpha * x - 0.5 * consts.p_alpha) -
                    2.0 * consts.c_alpha * x + order.m_alpha * consts.p_alpha;
  const double ddr = 2.0 * (consts.b_alpha * consts.b_alpha - consts.c_alpha);
  return (2.0 * r * ddr - dr * dr) / (4.0 * order.m_alpha * r * std::sqrt(r));
}

double cf_reduced_rhs(double i, const CFConstants& consts, const CFOrder& order, const EpidemicParams& params) {
  const double n = g_alpha(i, consts, order) + i;
  if (!(n > 0.0)) {
    std::ostringstream os;
    os << "cf_reduced_rhs requires g_alpha(i) + i > 0 (got " << n << " at i = " << i << ")";
    throw DomainError(os.str());
  }
  return (params.beta - params.gamma - params.beta * i / n) * i;
}

Trajectory solve_cf(const EpidemicParams& params, const CFOrder& order, const GridSpec& grid,
                    const IntegratorConfig& config) {
  grid.validate();
  const CFConstants consts = cf_constants(params, order);

  std::vector<double> infected;
  if (params.i0 == 0.0) {
    infected.assign(grid.n_steps + 1, 0.0);
  } else {
    const auto rhs = [&](double /*t*/, double i) { return cf_reduced_rhs(i, consts, order, params); };
    infected = integrate_scalar(rhs, params.i0, grid, config);
  }

  Trajectory traj;
  traj.model_tag = ModelTag::CaputoFabrizio;
  traj.reserve(grid.n_steps + 1);
  traj.push_back(0.0, params.s0, params.i0);
  for (std::size_t k = 1; k <= grid.n_steps; ++k) {
    // Disease-free states keep S at its initial value.
    const double s = params.i0 == 0.0 ? params.s0 : g_alpha(infected[k], consts, order);
    traj.push_back(grid.time(k), s, infected[k]);
  }
  return traj;
}

EquilibriumReport cf_equilibria(const EpidemicParams& params, const CFOrder& order) {
  const CFConstants consts = cf_constants(params, order);
  const double a = order.alpha;
  const double m = order.m_alpha;
  const double beta = params.beta;
  const double gamma = params.gamma;

  EquilibriumReport rep;
  rep.reproduction_number = beta / gamma;
  if (beta > gamma) {
    const double denom = a * (beta - gamma) + m * gamma;
    rep.i_star = (beta - gamma) * consts.p_alpha / denom;
    rep.s_star = gamma / (beta - gamma) * rep.i_star;
    rep.n_star = beta * consts.p_alpha / denom;
  } else {
    rep.i_star = 0.0;
    rep.s_star = consts.p_alpha / m;
    rep.n_star = rep.s_star;
  }

  const double i0 = params.i0;
  if (a == 1.0 || i0 == 0.0) {
    rep.n_monotonicity = Monotonicity::Constant;
  } else if (beta > gamma) {
    if (std::abs(i0 - rep.i_star) <= 1e-12 * rep.i_star) {
      rep.n_monotonicity = Monotonicity::Constant;
    } else {
      rep.n_monotonicity = i0 < rep.i_star ? Monotonicity::Increasing : Monotonicity::Decreasing;
    }
  } else {
    rep.n_monotonicity = Monotonicity::Decreasing;
  }
  return rep;
}

double cf_limit_total(const EpidemicParams& params, const CFOrder& order) {
  return cf_equilibria(params, order).n_star;
}

double min_admissible_alpha(const EpidemicParams& params) { return params.gamma / (1.0 + params.gamma); }

double invert_alpha(const EpidemicParams& params, double n_infinity) {
  params.validate();
  require_endemic(params);
  if (!std::isfinite(n_infinity)) throw DomainError("n_infinity must be finite");

  const double beta = params.beta;
  const double gamma = params.gamma;
  const double s0 = params.s0;
  const double i0 = params.i0;
  const double n0 = params.n0();

  const double n_lo_alpha = endemic_total(params, min_admissible_alpha(params), 1.0);
  const double lo = std::min(n_lo_alpha, n0);
  const double hi = std::max(n_lo_alpha, n0);
  const double slack = 1e-12 * std::max(1.0, hi);
  if (n_infinity < lo - slack || n_infinity > hi + slack) {
    std::ostringstream os;
    os << "n_infinity = " << n_infinity << " is outside the attainable range [" << lo << ", " << hi << "]";
    throw DomainError(os.str());
  }

  // Linear in (1 - alpha) once P_alpha is expanded; see cf_limit_total.
  const double denom =
      beta * beta * i0 * s0 - beta * n0 * (i0 + gamma * i0 - n_infinity) - gamma * n0 * n_infinity;
  if (std::abs(denom) <= 1e-300) throw DomainError("alpha inversion is singular for these parameters");
  double alpha = 1.0 - (n_infinity - n0) * n0 * beta / denom;
  if (alpha > 1.0 && alpha <= 1.0 + 1e-12) alpha = 1.0;
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "recovered alpha = " << alpha << " lies outside (0, 1]";
    throw DomainError(os.str());
  }
  return alpha;
}

double invert_alpha(const EpidemicParams& params, double n_infinity, const ScalingFunction& scaling) {
  params.validate();
  require_endemic(params);
  if (!std::isfinite(n_infinity)) throw DomainError("n_infinity must be finite");

  const auto residual = [&](double alpha) {
    const double m = scaling(alpha);
    if (!(m >= alpha)) {
      std::ostringstream os;
      os << "assumption violated: M(alpha) >= alpha at alpha = " << alpha;
      throw AssumptionError(os.str());
    }
    return endemic_total(params, alpha, m) - n_infinity;
  };

  double lo = min_admissible_alpha(params);
  double hi = 1.0;
  double r_lo = residual(lo);
  const double r_hi = residual(hi);
  const double slack = 1e-12 * std::max(1.0, std::abs(n_infinity));
  if (std::abs(r_hi) <= slack) return 1.0;
  if ((r_lo > 0.0) == (r_hi > 0.0)) {
    std::ostringstream os;
    os << "n_infinity = " << n_infinity << " is outside the attainable range";
    throw DomainError(os.str());
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double r_mid = residual(mid);
    if ((r_mid > 0.0) == (r_lo > 0.0)) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace fracsis
