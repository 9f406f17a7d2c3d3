#include "fracsis/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fracsis {

namespace {

struct StepAttempt {
  double y = 0.0;
  double slope = 0.0;  // rhs at the end of the step
  double dense = 0.0;  // quartic correction of the continuous extension (0: cubic Hermite)
  double error = std::numeric_limits<double>::infinity();  // scaled, accept when <= 1
};

double scaled_error(double err, double y_old, double y_new, const IntegratorConfig& cfg) {
  const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y_old), std::abs(y_new));
  return std::abs(err) / scale;
}

// Dormand–Prince 5(4), first-same-as-last.
StepAttempt dopri_step(const ScalarRhs& rhs, double t, double y, double k1, double h, const IntegratorConfig& cfg) {
  const double k2 = rhs(t + h / 5.0, y + h * (k1 / 5.0));
  const double k3 = rhs(t + 3.0 * h / 10.0, y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
  const double k4 = rhs(t + 4.0 * h / 5.0, y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
  const double k5 = rhs(t + 8.0 * h / 9.0, y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                                                    64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
  const double k6 = rhs(t + h, y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3 +
                                        49.0 / 176.0 * k4 - 5103.0 / 18656.0 * k5));
  StepAttempt out;
  out.y = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 - 2187.0 / 6784.0 * k5 +
                   11.0 / 84.0 * k6);
  out.slope = rhs(t + h, out.y);
  const double err = h * (71.0 / 57600.0 * k1 - 71.0 / 16695.0 * k3 + 71.0 / 1920.0 * k4 -
                          17253.0 / 339200.0 * k5 + 22.0 / 525.0 * k6 - 1.0 / 40.0 * out.slope);
  out.error = scaled_error(err, y, out.y, cfg);
  out.dense = h * (-12715105075.0 / 11282082432.0 * k1 + 87487479700.0 / 32700410799.0 * k3 -
                   10690763975.0 / 1880347072.0 * k4 + 701980252875.0 / 199316789632.0 * k5 -
                   1453857185.0 / 822651844.0 * k6 + 69997945.0 / 29380423.0 * out.slope);
  return out;
}

// One trapezoid step solved by Newton with a finite-difference Jacobian.
// Returns NaN when the corrector does not converge.
double trapezoid_step(const ScalarRhs& rhs, double t, double y, double slope, double h) {
  const double t1 = t + h;
  double y1 = y + h * slope;
  for (int iter = 0; iter < 25; ++iter) {
    const double f1 = rhs(t1, y1);
    const double residual = y1 - y - 0.5 * h * (slope + f1);
    const double delta = std::sqrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(y1));
    const double dfdy = (rhs(t1, y1 + delta) - f1) / delta;
    const double jac = 1.0 - 0.5 * h * dfdy;
    if (jac == 0.0 || !std::isfinite(jac)) break;
    const double update = residual / jac;
    y1 -= update;
    if (std::abs(update) <= 1e-14 * std::max(1.0, std::abs(y1))) return y1;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Step doubling: the two half steps are kept, their gap to the full step
// (divided by 2^2 - 1) is the error estimate.
StepAttempt trapezoid_attempt(const ScalarRhs& rhs, double t, double y, double slope, double h,
                              const IntegratorConfig& cfg) {
  StepAttempt out;
  const double full = trapezoid_step(rhs, t, y, slope, h);
  const double half = trapezoid_step(rhs, t, y, slope, 0.5 * h);
  if (!std::isfinite(full) || !std::isfinite(half)) return out;
  const double mid_t = t + 0.5 * h;
  const double two_halves = trapezoid_step(rhs, mid_t, half, rhs(mid_t, half), 0.5 * h);
  if (!std::isfinite(two_halves)) return out;
  out.y = two_halves;
  out.slope = rhs(t + h, out.y);
  out.error = scaled_error((two_halves - full) / 3.0, y, two_halves, cfg);
  return out;
}

// Continuous extension in Hairer's nested form. With dense = 0 this is the
// cubic Hermite interpolant of the end values and slopes.
double interpolate(double y0, double f0, const StepAttempt& step, double h, double theta) {
  const double diff = step.y - y0;
  const double b = h * f0 - diff;
  const double c = diff - h * step.slope - b;
  return y0 + theta * (diff + (1.0 - theta) * (b + theta * (c + (1.0 - theta) * step.dense)));
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("integrator tolerances must be positive");
  if (max_steps < 1) throw DomainError("max_steps must be positive");
}

IntegrationError::IntegrationError(const std::string& what, double t, double y)
    : SolverError(what), last_t_(t), last_y_(y) {}

std::vector<double> integrate_scalar(const ScalarRhs& rhs, double y0, const GridSpec& grid,
                                     const IntegratorConfig& config) {
  grid.validate();
  config.validate();

  const double t_end = grid.t_end;
  const bool rk = config.method == IntegrationMethod::AdaptiveRK45;
  const double exponent = rk ? 1.0 / 5.0 : 1.0 / 3.0;

  std::vector<double> out;
  out.reserve(grid.n_steps + 1);
  out.push_back(y0);
  std::size_t next_sample = 1;

  double t = 0.0;
  double y = y0;
  double slope = rhs(t, y);

  // Initial step from the ratio of the solution scale to its slope.
  const double scale0 = config.abs_tol + config.rel_tol * std::abs(y0);
  const double d0 = std::abs(y0) / scale0;
  const double d1 = std::abs(slope) / scale0;
  double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h = std::min({h, t_end, grid.dt()});

  std::size_t accepted = 0;
  while (next_sample <= grid.n_steps) {
    const bool last = h >= t_end - t;
    if (last) h = t_end - t;
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      std::ostringstream os;
      os << "step size underflow at t = " << t;
      throw IntegrationError(os.str(), t, y);
    }

    StepAttempt step;
    try {
      step = rk ? dopri_step(rhs, t, y, slope, h, config) : trapezoid_attempt(rhs, t, y, slope, h, config);
    } catch (const DomainError&) {
      // A trial stage left the rhs domain; retry with a smaller step.
      step = StepAttempt{};
    }
    if (!std::isfinite(step.y) || !std::isfinite(step.slope)) step.error = std::numeric_limits<double>::infinity();

    if (step.error <= 1.0) {
      const double t_new = last ? t_end : t + h;
      while (next_sample <= grid.n_steps && (next_sample == grid.n_steps ? last : grid.time(next_sample) <= t_new)) {
        if (next_sample == grid.n_steps) {
          out.push_back(step.y);
        } else {
          const double theta = (grid.time(next_sample) - t) / h;
          out.push_back(interpolate(y, slope, step, h, theta));
        }
        ++next_sample;
      }
      t = t_new;
      y = step.y;
      slope = step.slope;
      if (++accepted >= config.max_steps && next_sample <= grid.n_steps) {
        std::ostringstream os;
        os << "maximum number of steps (" << config.max_steps << ") exceeded at t = " << t;
        throw IntegrationError(os.str(), t, y);
      }
      const double factor = step.error == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(step.error, -exponent), 0.2, 5.0);
      h *= factor;
    } else {
      const double factor = std::isfinite(step.error) ? std::clamp(0.9 * std::pow(step.error, -exponent), 0.1, 0.9)
                                                      : 0.25;
      h *= factor;
    }
  }
  return out;
}

}  // namespace fracsis
