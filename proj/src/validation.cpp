#include "fracsis/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "fracsis/caputo_l1.hpp"
#include "fracsis/cf_model.hpp"
#include "fracsis/existence.hpp"

namespace fracsis {

namespace {

class Suite {
 public:
  explicit Suite(const ValidationOptions& opts) : opts_(opts) {}

  L1Weights table(double alpha, std::size_t n) const {
    L1Weights w = l1_weights(alpha, n);
    if (opts_.corrupt_weights && w.size() > 1) w.a[1] = 2.0 * w.a[1] + 0.25;
    return w;
  }

  Trajectory caputo(const EpidemicParams& p, const CaputoOrders& o, const GridSpec& g) const {
    return solve_caputo(p, table(o.alpha1, g.n_steps), table(o.alpha2, g.n_steps), g);
  }

  void add(std::string name, bool passed, double measured, double tolerance, std::string detail = {},
           bool informational = false) {
    report_.checks.push_back(
        CheckResult{std::move(name), passed || informational, informational, measured, tolerance, std::move(detail)});
  }

  // Runs one check body; an escaping exception fails the check.
  template <class Body>
  void run(const std::string& name, Body&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, false, std::nan(""), 0.0, std::string("exception: ") + e.what());
    }
  }

  const ValidationOptions& opts() const { return opts_; }
  ValidationReport& report() { return report_; }

 private:
  const ValidationOptions& opts_;
  ValidationReport report_;
};

const EpidemicParams kFigDato1{0.7, 0.2, 8.0, 2.0};
const EpidemicParams kFigCF1{0.7, 0.2, 6.0, 4.0};
const EpidemicParams kFigCF2{0.1, 0.2, 6.0, 4.0};

void weight_contract(Suite& s) {
  double worst_sum = 0.0;
  double min_weight = 1.0;
  for (int k = 1; k <= 9; ++k) {
    const L1Weights w = s.table(0.1 * k, 2000);
    for (std::size_t m = 1; m <= w.size(); ++m) {
      double sum = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double c = w.step_weight(m, j);
        sum += c;
        min_weight = std::min(min_weight, c);
      }
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
  }
  std::ostringstream d;
  d << "min weight " << min_weight;
  s.add("weight contract (alpha 0.1..0.9, n <= 2000)", worst_sum <= 1e-12 && min_weight >= 0.0, worst_sum, 1e-12,
        d.str());
}

void conservation(Suite& s) {
  const GridSpec grid{20.0, 10000};
  const Trajectory tr = s.caputo(kFigDato1, {0.5, 0.5}, grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k) worst = std::max(worst, std::abs(tr.total(k) - kFigDato1.n0()));
  s.add("discrete conservation (alpha1 = alpha2 = 0.5, 1e4 steps)", worst <= s.opts().conservation_tol, worst,
        s.opts().conservation_tol);
}

void euler_reduction(Suite& s) {
  const GridSpec grid{20.0, 1000};
  const Trajectory tr = s.caputo(kFigDato1, {1.0, 1.0}, grid);
  double x = kFigDato1.s0;
  double y = kFigDato1.i0;
  double worst = 0.0;
  for (std::size_t k = 1; k <= grid.n_steps; ++k) {
    const double f = (kFigDato1.gamma - kFigDato1.beta * x / (x + y)) * y;
    x += grid.dt() * f;
    y -= grid.dt() * f;
    worst = std::max({worst, std::abs(tr.s[k] - x), std::abs(tr.i[k] - y)});
  }
  s.add("forward Euler reduction (alpha = 1, 1e3 steps)", worst <= 1e-12, worst, 1e-12);
}

void fractional_oracle(Suite& s) {
  const double lambda = 1.0;
  const double u0 = 1.0;
  for (double alpha : {0.3, 0.5, 0.8}) {
    const double exact = u0 + lambda / gamma_function(alpha + 1.0);
    std::vector<double> errors;
    for (int p = 7; p <= 11; ++p) {
      const GridSpec grid{1.0, std::size_t{1} << p};
      const L1Weights w = s.table(alpha, grid.n_steps);
      // Scalar L1 recursion with a constant right-hand side.
      std::vector<double> u{u0};
      const double h = gamma_function(2.0 - alpha) * std::pow(grid.dt(), alpha);
      for (std::size_t n = 0; n < grid.n_steps; ++n) {
        double mem = w.a[n] * u[0];
        for (std::size_t j = 1; j <= n; ++j) mem += (w.a[n - j] - w.a[n + 1 - j]) * u[j];
        u.push_back(mem + h * lambda);
      }
      errors.push_back(std::abs(u.back() - exact) / exact);
    }
    bool monotone = true;
    for (std::size_t k = 1; k < errors.size(); ++k) monotone = monotone && errors[k] < errors[k - 1];
    std::ostringstream name;
    name << "constant-rhs fractional oracle (alpha = " << alpha << ")";
    std::ostringstream d;
    d << "errors";
    for (double e : errors) d << ' ' << std::setprecision(3) << e;
    s.add(name.str(), monotone && errors.back() <= 1e-2, errors.back(), 1e-2, d.str());
  }
}

// Index of the extremum of n(t) and whether it is an interior minimum (+1),
// interior maximum (-1) or at the boundary (0).
int interior_extremum(const std::vector<double>& n) {
  const auto lo = std::min_element(n.begin(), n.end()) - n.begin();
  const auto hi = std::max_element(n.begin(), n.end()) - n.begin();
  const auto last = static_cast<std::ptrdiff_t>(n.size()) - 1;
  const bool interior_min = lo > 0 && lo < last;
  const bool interior_max = hi > 0 && hi < last;
  if (interior_min && !interior_max) return +1;
  if (interior_max && !interior_min) return -1;
  return 0;
}

void caputo_figure(Suite& s) {
  const GridSpec grid{20.0, 2000};
  const auto forward = s.caputo(kFigDato1, {0.9, 0.5}, grid).totals();
  const auto swapped = s.caputo(kFigDato1, {0.5, 0.9}, grid).totals();
  const int a = interior_extremum(forward);
  const int b = interior_extremum(swapped);
  std::ostringstream d;
  d << "alpha1 > alpha2: " << (a > 0 ? "dip" : a < 0 ? "bump" : "monotone") << "; swapped: "
    << (b > 0 ? "dip" : b < 0 ? "bump" : "monotone");
  s.add("Caputo N(t) non-monotone with flipped extremum", a != 0 && b == -a, 0.0, 0.0, d.str());
}

void cf_convergence_and_invariant(Suite& s) {
  const CFOrder order{0.5, 1.0};
  const GridSpec grid{200.0, 2000};
  const Trajectory tr = solve_cf(kFigCF1, order, grid);
  const EquilibriumReport eq = cf_equilibria(kFigCF1, order);
  const double err = std::max(std::abs(tr.i.back() - eq.i_star), std::abs(tr.s.back() - eq.s_star));
  s.add("CF equilibrium convergence (t = 200)", err <= 1e-3, err, 1e-3);

  const double p = cf_constants(kFigCF1, order).p_alpha;
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    worst = std::max(worst, std::abs(cf_invariant(tr.s[k], tr.i[k], kFigCF1, order) - p) / p);
  }
  s.add("CF algebraic conservation of P", worst <= 1e-8, worst, 1e-8);
}

void cf_monotonicity(Suite& s) {
  struct Config {
    EpidemicParams params;
    double alpha;
  };
  std::vector<Config> configs;
  for (double a : {0.2, 0.4, 0.6, 0.8}) {
    configs.push_back({kFigCF1, a});
    configs.push_back({kFigCF2, a});
  }
  for (double i0 : {2.0, 4.0, 6.0, 8.0}) {
    configs.push_back({{0.7, 0.2, 10.0 - i0, i0}, 0.5});
    configs.push_back({{0.1, 0.2, 10.0 - i0, i0}, 0.5});
  }
  const GridSpec grid{40.0, 400};
  int failures = 0;
  std::ostringstream d;
  for (const Config& c : configs) {
    const CFOrder order{c.alpha, 1.0};
    const auto n = solve_cf(c.params, order, grid).totals();
    const Monotonicity expected = cf_equilibria(c.params, order).n_monotonicity;
    bool ok = expected != Monotonicity::Constant;
    for (std::size_t k = 1; k < n.size() && ok; ++k) {
      ok = expected == Monotonicity::Increasing ? n[k] > n[k - 1] : n[k] < n[k - 1];
    }
    if (!ok) {
      ++failures;
      d << "[beta " << c.params.beta << " i0 " << c.params.i0 << " alpha " << c.alpha << "] ";
    }
  }
  double flat = 0.0;
  for (const EpidemicParams& p : {kFigCF1, kFigCF2}) {
    const auto n = solve_cf(p, {1.0, 1.0}, grid).totals();
    for (double v : n) flat = std::max(flat, std::abs(v - p.n0()));
  }
  if (flat > 1e-9) d << "alpha = 1 drift " << flat;
  s.add("CF N(t) monotonicity classes", failures == 0 && flat <= 1e-9, failures, 0.0, d.str());
}

void inverse_alpha(Suite& s) {
  double worst = 0.0;
  for (double a : {0.3, 0.5, 0.8}) {
    const double n_inf = cf_equilibria(kFigCF1, {a, 1.0}).n_star;
    worst = std::max(worst, std::abs(invert_alpha(kFigCF1, n_inf) - a));
  }
  s.add("inverse-alpha round trip", worst <= 1e-9, worst, 1e-9);
}

void horizons_and_boxes(Suite& s) {
  const double t1 = existence_horizon({0.7, 0.2, 8.0, 2.0}, {1.0, 1.0});
  const double t2 = existence_horizon({0.7, 0.2, 2.0, 8.0}, {1.0, 1.0});
  const double err = std::max(std::abs(t1 - 1.0 / 2.7), std::abs(t2 - 2.0 / 16.2));
  s.add("existence horizons at alpha = 1", err <= 1e-10, err, 1e-10);

  std::mt19937_64 rng(s.opts().seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  for (bool lemma_two : {false, true}) {
    int escapes = 0;
    for (int draw = 0; draw < 20; ++draw) {
      const double gamma = uniform(0.05, 1.0);
      const double beta = lemma_two ? gamma + uniform(0.01, 1.0) : uniform(0.01, gamma);
      const EpidemicParams p{beta, gamma, uniform(0.5, 10.0), uniform(0.5, 10.0)};
      const CaputoOrders o{uniform(0.2, 1.0), uniform(0.2, 1.0)};
      const InvarianceBox box = invariance_box(p, o, uniform(0.1, 0.9));
      const Trajectory tr = s.caputo(p, o, GridSpec{box.horizon, 400});
      for (std::size_t k = 0; k < tr.size(); ++k) {
        if (!box.contains(tr.s[k], tr.i[k])) {
          ++escapes;
          break;
        }
      }
    }
    s.add(lemma_two ? "invariance box, beta > gamma (20 draws)" : "invariance box, gamma >= beta (20 draws)",
          escapes == 0, escapes, 0.0);
  }
}

void picard_convergence(Suite& s) {
  const EpidemicParams p{0.1, 0.2, 6.0, 4.0};
  const CaputoOrders o{0.7, 0.9};
  const GridSpec grid{2.0, 400};
  const Trajectory reference = s.caputo(p, o, grid);
  std::vector<double> dist;
  for (std::size_t n : {4, 8, 16, 32}) {
    const Trajectory z = picard_approximant(p, o, n, grid);
    double d = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      d = std::max({d, std::abs(z.s[k] - reference.s[k]), std::abs(z.i[k] - reference.i[k])});
    }
    dist.push_back(d);
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < dist.size(); ++k) decreasing = decreasing && dist[k] < dist[k - 1];
  std::ostringstream d;
  d << "sup distances n = 4, 8, 16, 32:";
  for (double v : dist) d << ' ' << std::setprecision(3) << v;
  d << (decreasing ? " (decreasing)" : " (not monotone)");
  s.add("delayed Picard approximants approach the L1 solution", decreasing, dist.back(), 0.0, d.str(), true);
}

}  // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport validate(const ValidationOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Suite s(options);
  s.run("weight contract", [&] { weight_contract(s); });
  s.run("discrete conservation", [&] { conservation(s); });
  s.run("forward Euler reduction", [&] { euler_reduction(s); });
  s.run("constant-rhs fractional oracle", [&] { fractional_oracle(s); });
  s.run("Caputo figure shape", [&] { caputo_figure(s); });
  s.run("CF equilibrium and invariant", [&] { cf_convergence_and_invariant(s); });
  s.run("CF monotonicity", [&] { cf_monotonicity(s); });
  s.run("inverse alpha", [&] { inverse_alpha(s); });
  s.run("existence horizons and boxes", [&] { horizons_and_boxes(s); });
  s.run("delayed Picard approximants", [&] { picard_convergence(s); });
  ValidationReport report = std::move(s.report());
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void print_report(std::ostream& os, const ValidationReport& report) {
  for (const CheckResult& c : report.checks) {
    os << (c.informational ? "INFO" : c.passed ? "PASS" : "FAIL") << "  " << c.name;
    os << "  measured=" << std::setprecision(6) << c.measured;
    if (!c.informational) os << " tol=" << c.tolerance;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(), [](auto& c) { return !c.passed; });
  os << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << " in " << std::fixed
     << std::setprecision(2) << report.seconds << " s\n";
  os.unsetf(std::ios::fixed);
}

}  // namespace fracsis
