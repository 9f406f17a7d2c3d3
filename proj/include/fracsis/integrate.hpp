#pragma once

// Scalar initial-value integrator sampled on a uniform grid.

#include <cstddef>
#include <functional>
#include <vector>

#include "fracsis/core.hpp"

namespace fracsis {

enum class IntegrationMethod {
  AdaptiveRK45,       // Dormand–Prince 5(4) embedded pair
  ImplicitTrapezoid,  // trapezoidal rule, Newton corrector, step doubling for error control
};

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  std::size_t max_steps = 1'000'000;
  IntegrationMethod method = IntegrationMethod::AdaptiveRK45;

  void validate() const;
};

/// Step-size underflow or step budget exhaustion. Holds the last accepted state.
class IntegrationError : public SolverError {
 public:
  IntegrationError(const std::string& what, double t, double y);

  double last_t() const { return last_t_; }
  double last_y() const { return last_y_; }

 private:
  double last_t_;
  double last_y_;
};

using ScalarRhs = std::function<double(double t, double y)>;

/// Integrates y' = rhs(t, y) from y(0) = y0 and returns y at every grid time.
/// Grid points falling inside an adaptive step are filled from the step's
/// continuous extension: the Dormand–Prince quartic for AdaptiveRK45, cubic
/// Hermite for ImplicitTrapezoid.
std::vector<double> integrate_scalar(const ScalarRhs& rhs, double y0, const GridSpec& grid,
                                     const IntegratorConfig& config = {});

}  // namespace fracsis
