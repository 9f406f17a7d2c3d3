#include <cmath>
#include <random>

#include "doctest.h"
#include "fracsis/cf_model.hpp"
#include "oracles.hpp"

using namespace fracsis;

namespace {

const EpidemicParams kEndemic{0.7, 0.2, 6.0, 4.0};
const EpidemicParams kFree{0.1, 0.2, 6.0, 4.0};

// P computed directly from its definition.
double p_direct(const EpidemicParams& p, double alpha, double m) {
  return m * p.s0 + alpha * p.i0 + (1.0 - alpha) * (p.beta - p.gamma - p.beta * p.i0 / (p.s0 + p.i0)) * p.i0;
}

}  // namespace

TEST_CASE("constants at alpha = 0.5") {
  const CFConstants c = cf_constants(kEndemic, {0.5, 1.0});
  CHECK(c.p_alpha == doctest::Approx(8.44).epsilon(1e-14));
  CHECK(c.b_alpha == doctest::Approx(0.5 * (1.5 + 0.5 * 0.5)).epsilon(1e-14));
  CHECK(c.c_alpha == doctest::Approx(0.5 - 0.5 * 0.2).epsilon(1e-14));
}

TEST_CASE("constants at alpha = 1 reduce to B = C = M") {
  const CFConstants c = cf_constants(kEndemic, {1.0, 1.0});
  CHECK(c.b_alpha == 1.0);
  CHECK(c.c_alpha == 1.0);
  CHECK(c.p_alpha == 10.0);
}

TEST_CASE("constants reject violated assumptions") {
  CHECK_THROWS_AS(cf_constants({0.7, 2.0, 6.0, 4.0}, {0.5, 1.0}), AssumptionError);
  CHECK_THROWS_AS(cf_constants(kEndemic, {0.5, 0.3}), AssumptionError);
}

TEST_CASE("g_alpha passes through the initial state and (0, P/M)") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const EpidemicParams p{0.05 + u(rng), 0.05 + 0.5 * u(rng), 0.1 + 10.0 * u(rng), 0.1 + 10.0 * u(rng)};
    const double alpha = min_admissible_alpha(p) + (1.0 - min_admissible_alpha(p)) * (0.01 + 0.99 * u(rng));
    const CFOrder order{alpha, alpha + (1.5 - alpha) * u(rng)};
    const CFConstants c = cf_constants(p, order);
    CHECK(c.p_alpha == doctest::Approx(p_direct(p, order.alpha, order.m_alpha)).epsilon(1e-13));
    CHECK(cf_invariant(p.s0, p.i0, p, order) == doctest::Approx(c.p_alpha).epsilon(1e-13));
    CHECK(g_alpha(0.0, c, order) == doctest::Approx(c.p_alpha / order.m_alpha).epsilon(1e-12));
    CHECK(g_alpha(p.i0, c, order) == doctest::Approx(p.s0).epsilon(1e-9));
  }
}

TEST_CASE("g_alpha derivatives agree with finite differences") {
  const CFOrder order{0.5, 1.0};
  const CFConstants c = cf_constants(kEndemic, order);
  const auto g = [&](double x) { return g_alpha(x, c, order); };
  const auto gp = [&](double x) { return g_alpha_prime(x, c, order); };
  for (double x : {0.5, 1.0, 2.0, 4.0, 6.0, 8.0}) {
    CHECK(gp(x) == doctest::Approx(oracle::derivative(g, x)).epsilon(1e-7));
    CHECK(g_alpha_second(x, c, order) == doctest::Approx(oracle::derivative(gp, x)).epsilon(1e-6));
  }
}

TEST_CASE("g_alpha is convex where defined") {
  const CFOrder order{0.5, 1.0};
  const CFConstants c = cf_constants(kEndemic, order);
  for (double x = 0.05; x < 9.0; x += 0.05) CHECK(g_alpha_second(x, c, order) > 0.0);
}

TEST_CASE("S = g_alpha(I) along the whole CF trajectory") {
  const CFOrder order{0.5, 1.0};
  const Trajectory tr = solve_cf(kEndemic, order, {40.0, 400});
  REQUIRE(tr.size() == 401);
  CHECK(tr.model_tag == ModelTag::CaputoFabrizio);
  CHECK(tr.s[0] == 6.0);
  CHECK(tr.i[0] == 4.0);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    CHECK(cf_invariant(tr.s[k], tr.i[k], kEndemic, order) == doctest::Approx(8.44).epsilon(1e-12));
  }
}

TEST_CASE("reduced right-hand side vanishes at the endemic equilibrium and has the right sign") {
  const CFOrder order{0.5, 1.0};
  const CFConstants c = cf_constants(kEndemic, order);
  const EquilibriumReport eq = cf_equilibria(kEndemic, order);
  CHECK(std::abs(cf_reduced_rhs(eq.i_star, c, order, kEndemic)) <= 1e-12);
  CHECK(cf_reduced_rhs(0.5 * eq.i_star, c, order, kEndemic) > 0.0);
  CHECK(cf_reduced_rhs(1.1 * eq.i_star, c, order, kEndemic) < 0.0);
  CHECK(cf_reduced_rhs(0.0, c, order, kEndemic) == 0.0);
}

TEST_CASE("endemic equilibria at alpha = 0.5") {
  const EquilibriumReport eq = cf_equilibria(kEndemic, {0.5, 1.0});
  CHECK(eq.reproduction_number == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(eq.i_star == doctest::Approx(9.377777777777778).epsilon(1e-13));
  CHECK(eq.s_star == doctest::Approx(3.751111111111111).epsilon(1e-13));
  CHECK(eq.n_star == doctest::Approx(13.128888888888888).epsilon(1e-13));
  CHECK(eq.n_monotonicity == Monotonicity::Increasing);
  CHECK(cf_limit_total(kEndemic, {0.5, 1.0}) == eq.n_star);
}

TEST_CASE("disease-free case: I dies out and S + I tends to P/M") {
  const CFOrder order{0.5, 1.0};
  const EquilibriumReport eq = cf_equilibria(kFree, order);
  CHECK(eq.i_star == 0.0);
  CHECK(eq.n_star == doctest::Approx(7.72).epsilon(1e-14));
  CHECK(eq.n_monotonicity == Monotonicity::Decreasing);
  const Trajectory tr = solve_cf(kFree, order, {300.0, 300});
  CHECK(tr.i.back() < 1e-6);
  CHECK(tr.total(300) == doctest::Approx(7.72).epsilon(1e-6));
}

TEST_CASE("no infection keeps the state fixed") {
  const EpidemicParams p{0.7, 0.2, 5.0, 0.0};
  const Trajectory tr = solve_cf(p, {0.5, 1.0}, {10.0, 20});
  for (std::size_t k = 0; k < tr.size(); ++k) {
    CHECK(tr.s[k] == 5.0);
    CHECK(tr.i[k] == 0.0);
  }
  CHECK(cf_equilibria(p, {0.5, 1.0}).n_monotonicity == Monotonicity::Constant);
}

TEST_CASE("alpha = 1 keeps S + I constant") {
  const Trajectory tr = solve_cf(kEndemic, {1.0, 1.0}, {40.0, 400});
  for (std::size_t k = 0; k < tr.size(); ++k) CHECK(std::abs(tr.total(k) - 10.0) <= 1e-9);
  CHECK(cf_equilibria(kEndemic, {1.0, 1.0}).n_monotonicity == Monotonicity::Constant);
}

TEST_CASE("trajectories approach I* monotonically and N(t) moves as classified") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 25; ++k) {
    const double gamma = 0.05 + 0.4 * u(rng);
    const EpidemicParams p{gamma + 0.1 + u(rng), gamma, 0.5 + 9.0 * u(rng), 0.5 + 9.0 * u(rng)};
    const double a_min = min_admissible_alpha(p);
    const CFOrder order{a_min + (1.0 - a_min) * (0.05 + 0.9 * u(rng)), 1.0};
    const EquilibriumReport eq = cf_equilibria(p, order);
    const Trajectory tr = solve_cf(p, order, {60.0, 600});
    // Slack at the integrator's relative tolerance: once converged, I jitters at that level.
    const double slack = IntegratorConfig{}.rel_tol * eq.i_star;
    double gap = std::abs(tr.i[0] - eq.i_star);
    for (std::size_t j = 1; j < tr.size(); ++j) {
      const double next = std::abs(tr.i[j] - eq.i_star);
      CHECK(next <= gap + slack);
      gap = next;
      CHECK(tr.s[j] > 0.0);
      CHECK(tr.i[j] > 0.0);
      CHECK(tr.i[j] <= std::max(p.i0, eq.i_star) + slack);
      const double dn = tr.total(j) - tr.total(j - 1);
      if (eq.n_monotonicity == Monotonicity::Increasing) CHECK(dn >= -slack);
      if (eq.n_monotonicity == Monotonicity::Decreasing) CHECK(dn <= slack);
    }
  }
}

TEST_CASE("inverse alpha round trip") {
  for (double alpha : {0.2, 0.35, 0.5, 0.8, 0.95, 1.0}) {
    const double n_inf = cf_limit_total(kEndemic, {alpha, 1.0});
    CHECK(invert_alpha(kEndemic, n_inf) == doctest::Approx(alpha).epsilon(1e-12));
    CHECK(invert_alpha(kEndemic, n_inf, [](double) { return 1.0; }) == doctest::Approx(alpha).epsilon(1e-10));
  }
}

TEST_CASE("inverse alpha by bisection with a non-constant scaling") {
  const ScalingFunction m = [](double a) { return 1.0 + 0.5 * a; };
  const double alpha = 0.6;
  const double n_inf = cf_limit_total(kEndemic, {alpha, m(alpha)});
  CHECK(invert_alpha(kEndemic, n_inf, m) == doctest::Approx(alpha).epsilon(1e-10));
}

TEST_CASE("inverse alpha domain") {
  CHECK_THROWS_AS(invert_alpha(kFree, 8.0), DomainError);
  CHECK_THROWS_AS(invert_alpha(kEndemic, 1000.0), DomainError);
  CHECK_THROWS_AS(invert_alpha(kEndemic, 1000.0, [](double) { return 1.0; }), DomainError);
}

TEST_CASE("I(100) is already within 1e-3 of the endemic level") {
  const Trajectory tr = solve_cf(kEndemic, {0.5, 1.0}, {100.0, 1000});
  CHECK(std::abs(tr.i.back() - 9.377777777777778) <= 1e-3);
}
