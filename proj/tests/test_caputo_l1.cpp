#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fracsis/caputo_l1.hpp"
#include "oracles.hpp"

using namespace fracsis;

TEST_CASE("weight table at alpha = 0.5") {
  const L1Weights w = l1_weights(0.5, 4);
  REQUIRE(w.size() == 4);
  CHECK(w.a[0] == 1.0);
  CHECK(w.a[1] == doctest::Approx(0.41421356237309515).epsilon(1e-15));
  CHECK(w.a[2] == doctest::Approx(0.31783724519578205).epsilon(1e-15));
  CHECK(w.a[3] == doctest::Approx(0.2679491924311228).epsilon(1e-15));
}

TEST_CASE("weight table at alpha = 1 is the Euler table") {
  const L1Weights w = l1_weights(1.0, 50);
  CHECK(w.a[0] == 1.0);
  for (std::size_t k = 1; k < w.size(); ++k) CHECK(w.a[k] == 0.0);
  for (std::size_t n1 = 1; n1 <= 50; ++n1) {
    const auto c = w.step_weights(n1);
    for (std::size_t j = 0; j + 1 < n1; ++j) CHECK(c[j] == 0.0);
    CHECK(c[n1 - 1] == 1.0);
  }
}

TEST_CASE("step weights match the definition") {
  for (double alpha : {0.1, 0.37, 0.5, 0.9}) {
    const L1Weights w = l1_weights(alpha, 40);
    for (int n1 = 1; n1 <= 40; ++n1) {
      for (int j = 0; j < n1; ++j) {
        CHECK(w.step_weight(n1, j) == doctest::Approx(oracle::step_weight(alpha, n1, j)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("step weights are positive and sum to one") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(0.01, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double alpha = ua(rng);
    const L1Weights w = l1_weights(alpha, 600);
    for (std::size_t n1 = 1; n1 <= 600; n1 += 37) {
      const auto c = w.step_weights(n1);
      double sum = 0.0;
      for (double x : c) {
        CHECK(x > 0.0);
        sum += x;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
    for (std::size_t k = 1; k < w.size(); ++k) CHECK(w.a[k] < w.a[k - 1]);
  }
}

TEST_CASE("l1_weights domain") {
  CHECK_THROWS_AS(l1_weights(0.0, 10), DomainError);
  CHECK_THROWS_AS(l1_weights(1.5, 10), DomainError);
}

TEST_CASE("alpha1 = alpha2 = 1 reproduces forward Euler bit for bit") {
  const EpidemicParams p{0.7, 0.2, 8.0, 2.0};
  const GridSpec g{20.0, 1000};
  const Trajectory tr = solve_caputo(p, {1.0, 1.0}, g);
  const auto ref = oracle::forward_euler(p.beta, p.gamma, p.s0, p.i0, g.t_end, 1000);
  REQUIRE(tr.size() == ref.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) {
    worst = std::max({worst, std::abs(tr.s[k] - ref[k].s), std::abs(tr.i[k] - ref[k].i)});
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("first step matches the hand-evaluated update") {
  const EpidemicParams p{0.7, 0.2, 8.0, 2.0};
  const GridSpec g{1.0, 10};
  const Trajectory tr = solve_caputo(p, {0.9, 0.5}, g);
  // f(8, 2) = -0.72; step factors Gamma(2 - alpha) dt^alpha from the oracle Gamma.
  const double s1 = 8.0 + oracle::lanczos_gamma(1.1) * std::pow(0.1, 0.9) * -0.72;
  const double i1 = 2.0 - oracle::lanczos_gamma(1.5) * std::pow(0.1, 0.5) * -0.72;
  CHECK(tr.s[1] == doctest::Approx(s1).epsilon(1e-13));
  CHECK(tr.i[1] == doctest::Approx(i1).epsilon(1e-13));
  CHECK(tr.s[1] == doctest::Approx(7.9137670645005).epsilon(1e-10));
  CHECK(tr.i[1] == doctest::Approx(2.20177968379).epsilon(1e-10));
}

TEST_CASE("equal orders conserve S + I") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double alpha = u(rng);
    const EpidemicParams p{u(rng), u(rng), 10.0 * u(rng), 10.0 * u(rng)};
    const Trajectory tr = solve_caputo(p, {alpha, alpha}, {30.0, 2000});
    const double n0 = p.n0();
    for (std::size_t k = 0; k < tr.size(); ++k) CHECK(std::abs(tr.total(k) - n0) <= 1e-9 * n0);
  }
}

TEST_CASE("mixed orders: N(t) has an interior extremum whose direction flips on swapping the orders") {
  // N = N0 + f0 (t^a1 / Gamma(a1+1) - t^a2 / Gamma(a2+1)) + ... near t = 0.
  // With f0 = -0.72 < 0 and a1 > a2 the bracket is negative for small t, so
  // N first rises: a bump. The swapped orders give a dip.
  const EpidemicParams p{0.7, 0.2, 8.0, 2.0};
  const GridSpec g{20.0, 2000};
  const Trajectory bump = solve_caputo(p, {0.9, 0.5}, g);
  const Trajectory dip = solve_caputo(p, {0.5, 0.9}, g);
  const auto nb = bump.totals();
  const auto nd = dip.totals();
  const auto [bmin, bmax] = std::minmax_element(nb.begin(), nb.end());
  const auto [dmin, dmax] = std::minmax_element(nd.begin(), nd.end());
  CHECK(bmax != nb.begin());
  CHECK(bmax != nb.end() - 1);
  CHECK(*bmax > 10.0);
  CHECK(nb.back() < 10.0);
  CHECK(dmin != nd.begin());
  CHECK(dmin != nd.end() - 1);
  CHECK(*dmin < 10.0);
  CHECK(nd.back() > 10.0);
  (void)bmin;
  (void)dmax;
}

TEST_CASE("caller-supplied weights are honored") {
  const EpidemicParams p{0.7, 0.2, 8.0, 2.0};
  const GridSpec g{5.0, 200};
  const Trajectory a = solve_caputo(p, {0.6, 0.6}, g);
  const Trajectory b = solve_caputo(p, l1_weights(0.6, 200), l1_weights(0.6, 200), g);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a.s[k] == b.s[k]);
  CHECK_THROWS_AS(solve_caputo(p, l1_weights(0.6, 100), l1_weights(0.6, 200), g), DomainError);
}

TEST_CASE("population collapse keeps the partial trajectory") {
  // One unit step with gamma >> beta: I drops by 50 while S gains only
  // Gamma(1.6) * 50, so S + I turns negative after the first step.
  const EpidemicParams p{0.01, 50.0, 0.0, 1.0};
  const GridSpec g{10.0, 10};
  try {
    (void)solve_caputo(p, {0.4, 1.0}, g);
    FAIL("expected PopulationCollapse");
  } catch (const PopulationCollapse& e) {
    CHECK(e.step() == 1);
    CHECK(e.partial().size() == e.step() + 1);
    CHECK(e.partial().s[0] == 0.0);
    CHECK(e.partial().i[0] == 1.0);
  }
}

TEST_CASE("generic solver: zero field keeps the initial state") {
  const VectorField zero = [](std::span<const double> y) { return std::vector<double>(y.size(), 0.0); };
  const std::vector<double> orders{0.3, 0.8, 1.0};
  const std::vector<double> y0{1.0, -2.0, 3.5};
  const auto ys = solve_caputo_generic(zero, orders, y0, {4.0, 64});
  REQUIRE(ys.size() == 65);
  for (const auto& y : ys) CHECK(y == y0);
}

TEST_CASE("generic solver: constant field converges to c t^alpha / Gamma(alpha + 1)") {
  for (double alpha : {0.3, 0.5, 0.8}) {
    const VectorField one = [](std::span<const double>) { return std::vector<double>{1.0}; };
    const std::vector<double> orders{alpha};
    const std::vector<double> y0{0.0};
    double previous = 1.0;
    for (std::size_t n : {256, 512, 1024}) {
      const auto ys = solve_caputo_generic(one, orders, y0, {1.0, n});
      const double exact = 1.0 / oracle::lanczos_gamma(alpha + 1.0);
      const double err = std::abs(ys.back()[0] - exact) / exact;
      CHECK(err < previous);
      CHECK(err < 5e-3);
      previous = err;
    }
  }
}

TEST_CASE("generic solver at order 1 is forward Euler for linear decay") {
  const VectorField decay = [](std::span<const double> y) { return std::vector<double>{-y[0]}; };
  const std::vector<double> orders{1.0};
  const std::vector<double> y0{1.0};
  const auto ys = solve_caputo_generic(decay, orders, y0, {1.0, 100});
  CHECK(ys.back()[0] == doctest::Approx(std::pow(0.99, 100)).epsilon(1e-13));
}

TEST_CASE("generic solver wraps field errors with the step index") {
  int calls = 0;
  const VectorField bad = [&calls](std::span<const double> y) {
    if (++calls == 5) throw std::runtime_error("boom");
    return std::vector<double>(y.size(), 1.0);
  };
  const std::vector<double> orders{0.5};
  const std::vector<double> y0{0.0};
  try {
    (void)solve_caputo_generic(bad, orders, y0, {1.0, 10});
    FAIL("expected FieldEvaluationError");
  } catch (const FieldEvaluationError& e) {
    CHECK(e.step() == 4);
  }
}
