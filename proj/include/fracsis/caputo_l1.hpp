#pragma once

// L1 memory scheme for Caputo systems of (possibly) mixed order.
//
// For order alpha the step to t_{n+1} reads
//
//   u^{n+1} = sum_{j=0}^{n} C[n+1, j] u^j + Gamma(2 - alpha) dt^alpha f(u^n)
//
// with C[n+1, 0] = a[n], C[n+1, j] = a[n-j] - a[n+1-j] and
// a[k] = (k+1)^{1-alpha} - k^{1-alpha}. The step weights are a convex
// combination of the whole history; alpha = 1 collapses them onto u^n and the
// scheme becomes forward Euler.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracsis/core.hpp"

namespace fracsis {

struct L1Weights {
  double alpha = 1.0;
  std::vector<double> a;

  std::size_t size() const { return a.size(); }

  /// C[n+1, j] for j = 0..n. Requires n < size().
  double step_weight(std::size_t n_plus_1, std::size_t j) const;
  /// All weights C[n+1, 0..n] of one step.
  std::vector<double> step_weights(std::size_t n_plus_1) const;
};

/// a[k] for k = 0..n_steps-1. Throws DomainError for alpha outside (0, 1].
L1Weights l1_weights(double alpha, std::size_t n_steps);

/// Thrown when S + I leaves the positive half-line. Carries the trajectory
/// computed up to and including the offending step.
class PopulationCollapse : public SolverError {
 public:
  PopulationCollapse(std::size_t step, Trajectory partial);

  std::size_t step() const { return step_; }
  const Trajectory& partial() const { return partial_; }

 private:
  std::size_t step_;
  Trajectory partial_;
};

/// Wraps an exception raised by a user field together with the step index.
class FieldEvaluationError : public SolverError {
 public:
  FieldEvaluationError(std::size_t step, const std::string& what);

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Solves D^{alpha1} S = f, D^{alpha2} I = -f on the grid.
Trajectory solve_caputo(const EpidemicParams& params, const CaputoOrders& orders, const GridSpec& grid);

/// Same as above with caller-supplied weight tables (each must hold at least
/// grid.n_steps entries). The tables' alpha values set the step factors.
Trajectory solve_caputo(const EpidemicParams& params, const L1Weights& s_weights, const L1Weights& i_weights,
                        const GridSpec& grid);

using VectorField = std::function<std::vector<double>(std::span<const double>)>;

/// Per-component L1 scheme for a d-dimensional system with one order per
/// component. Returns n_steps + 1 states, the first being y0.
std::vector<std::vector<double>> solve_caputo_generic(const VectorField& field, std::span<const double> orders,
                                                      std::span<const double> y0, const GridSpec& grid);

}  // namespace fracsis
