#pragma once

// SIS model with a Caputo–Fabrizio derivative on S and an ordinary
// derivative on I.
//
// The quantity
//
//   P(t) = M S + alpha I + (1 - alpha)(beta - gamma - beta I / (S + I)) I
//
// is conserved along solutions, which pins S to a known function of I,
// S = g_alpha(I). The dynamics then reduce to the scalar ODE
//
//   I' = (beta - gamma - beta I / (g_alpha(I) + I)) I,
//
// which is the only thing integrated here; the fractional operator itself is
// never discretized.

#include <functional>

#include "fracsis/core.hpp"
#include "fracsis/integrate.hpp"

namespace fracsis {

struct CFConstants {
  double b_alpha = 0.0;
  double c_alpha = 0.0;
  double p_alpha = 0.0;
};

enum class Monotonicity { Increasing, Decreasing, Constant };

std::string_view to_string(Monotonicity m);

struct EquilibriumReport {
  double reproduction_number = 0.0;
  double i_star = 0.0;
  double s_star = 0.0;
  double n_star = 0.0;
  Monotonicity n_monotonicity = Monotonicity::Constant;
};

/// Throws AssumptionError naming the failed inequality when gamma >= alpha/(1-alpha)
/// or M(alpha) < alpha.
CFConstants cf_constants(const EpidemicParams& params, const CFOrder& order);

/// P for an arbitrary state; equals p_alpha at (s0, i0).
double cf_invariant(double s, double i, const EpidemicParams& params, const CFOrder& order);

/// Radicand of g_alpha: (B x - P/2)^2 - C x^2 + M P x.
double g_alpha_radicand(double x, const CFConstants& consts, const CFOrder& order);

double g_alpha(double x, const CFConstants& consts, const CFOrder& order);
double g_alpha_prime(double x, const CFConstants& consts, const CFOrder& order);
double g_alpha_second(double x, const CFConstants& consts, const CFOrder& order);

/// Right-hand side of the reduced ODE for I. Throws DomainError when
/// g_alpha(i) + i <= 0.
double cf_reduced_rhs(double i, const CFConstants& consts, const CFOrder& order, const EpidemicParams& params);

Trajectory solve_cf(const EpidemicParams& params, const CFOrder& order, const GridSpec& grid,
                    const IntegratorConfig& config = {});

EquilibriumReport cf_equilibria(const EpidemicParams& params, const CFOrder& order);

/// Long-run total population beta P / (alpha (beta - gamma) + M gamma) for R > 1.
double cf_limit_total(const EpidemicParams& params, const CFOrder& order);

/// Recovers alpha from the observed long-run total population, with M = 1.
/// Requires R > 1 and n_infinity within the range spanned by the admissible
/// orders; throws DomainError otherwise.
double invert_alpha(const EpidemicParams& params, double n_infinity);

using ScalingFunction = std::function<double(double)>;

/// Same inversion for a general scaling M(alpha), solved by bisection over
/// the admissible orders.
double invert_alpha(const EpidemicParams& params, double n_infinity, const ScalingFunction& scaling);

/// Smallest admissible order for the given recovery rate: gamma < alpha/(1-alpha)
/// holds exactly for alpha above this value.
double min_admissible_alpha(const EpidemicParams& params);

}  // namespace fracsis
