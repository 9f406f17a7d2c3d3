#pragma once

// Shared domain types for the fractional SIS models: parameters, orders,
// time grids, trajectories, and the incidence field both solvers integrate.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracsis {

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a Caputo–Fabrizio order violates one of the model's standing
/// assumptions. The message names the failed inequality.
class AssumptionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base class for failures that happen while a solver is stepping.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EpidemicParams {
  double beta = 0.0;   // infection rate
  double gamma = 0.0;  // recovery rate
  double s0 = 0.0;
  double i0 = 0.0;

  double n0() const { return s0 + i0; }
  double reproduction_number() const { return beta / gamma; }

  /// Throws DomainError unless beta, gamma > 0, s0, i0 >= 0 and s0 + i0 > 0.
  void validate() const;
};

struct CaputoOrders {
  double alpha1 = 1.0;  // order of the S equation
  double alpha2 = 1.0;  // order of the I equation

  void validate() const;
};

/// Order and scaling factor M(alpha) of the Caputo–Fabrizio operator.
struct CFOrder {
  double alpha = 1.0;
  double m_alpha = 1.0;

  /// Checks 0 < alpha <= 1 and m_alpha >= alpha.
  void validate() const;
  /// Additionally checks gamma < alpha / (1 - alpha) when alpha < 1.
  void validate(const EpidemicParams& params) const;
};

/// Uniform grid t_k = k * dt on [0, t_end].
struct GridSpec {
  double t_end = 1.0;
  std::size_t n_steps = 1;

  double dt() const { return t_end / static_cast<double>(n_steps); }
  double time(std::size_t k) const;
  void validate() const;
};

enum class ModelTag { Caputo, CaputoFabrizio };

std::string_view to_string(ModelTag tag);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> s;
  std::vector<double> i;
  ModelTag model_tag = ModelTag::Caputo;

  std::size_t size() const { return times.size(); }
  double total(std::size_t k) const { return s[k] + i[k]; }
  std::vector<double> totals() const;

  void reserve(std::size_t n);
  void push_back(double t, double s_value, double i_value);
};

/// Rate of change of S in the SIS system, f(x, y) = (gamma - beta x / (x + y)) y.
/// The I equation uses -f. Throws DomainError when x + y <= 0.
double sis_field(double s, double i, const EpidemicParams& params);

/// Gamma function for z > 0. Throws DomainError for z <= 0 or NaN.
double gamma_function(double z);

}  // namespace fracsis
