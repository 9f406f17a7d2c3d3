#include "fracsis/caputo_l1.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace fracsis {

namespace {

// History of one component together with its step factor Gamma(2-alpha) dt^alpha.
class MemoryComponent {
 public:
  MemoryComponent(const L1Weights& weights, double dt, double u0)
      : weights_(weights), step_factor_(gamma_function(2.0 - weights.alpha) * std::pow(dt, weights.alpha)) {
    history_.reserve(weights.size() + 1);
    history_.push_back(u0);
  }

  double current() const { return history_.back(); }

  // Advances from u^n to u^{n+1} given f(u^n).
  double advance(double rate) {
    const std::size_t n = history_.size() - 1;
    const auto& a = weights_.a;
    double memory = a[n] * history_[0];
    for (std::size_t j = 1; j <= n; ++j) memory += (a[n - j] - a[n + 1 - j]) * history_[j];
    const double next = memory + step_factor_ * rate;
    history_.push_back(next);
    return next;
  }

 private:
  const L1Weights& weights_;
  double step_factor_;
  std::vector<double> history_;
};

void require_table(const L1Weights& w, std::size_t n_steps) {
  if (!(w.alpha > 0.0 && w.alpha <= 1.0)) throw DomainError("weight table alpha must lie in (0, 1]");
  if (w.size() < n_steps) throw DomainError("weight table shorter than the grid");
}

}  // namespace

double L1Weights::step_weight(std::size_t n_plus_1, std::size_t j) const {
  const std::size_t n = n_plus_1 - 1;
  if (n_plus_1 == 0 || n >= a.size() || j > n) throw DomainError("step weight index out of range");
  if (j == 0) return a[n];
  return a[n - j] - a[n + 1 - j];
}

std::vector<double> L1Weights::step_weights(std::size_t n_plus_1) const {
  if (n_plus_1 == 0 || n_plus_1 > a.size()) throw DomainError("step index out of range");
  std::vector<double> c(n_plus_1);
  for (std::size_t j = 0; j < n_plus_1; ++j) c[j] = step_weight(n_plus_1, j);
  return c;
}

L1Weights l1_weights(double alpha, std::size_t n_steps) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "alpha must lie in (0, 1] (got " << alpha << ")";
    throw DomainError(os.str());
  }
  if (n_steps < 1) throw DomainError("n_steps must be at least 1");
  L1Weights w;
  w.alpha = alpha;
  w.a.resize(n_steps);
  const double p = 1.0 - alpha;
  // 0^0 would give a[0] = 0 at alpha = 1.
  w.a[0] = 1.0;
  double prev = 1.0;  // k^p at k = 1
  for (std::size_t k = 1; k < n_steps; ++k) {
    const double next = std::pow(static_cast<double>(k + 1), p);
    w.a[k] = next - prev;
    prev = next;
  }
  return w;
}

PopulationCollapse::PopulationCollapse(std::size_t step, Trajectory partial)
    : SolverError("population collapse: S + I <= 0 at step " + std::to_string(step)),
      step_(step),
      partial_(std::move(partial)) {}

FieldEvaluationError::FieldEvaluationError(std::size_t step, const std::string& what)
    : SolverError("field evaluation failed at step " + std::to_string(step) + ": " + what), step_(step) {}

Trajectory solve_caputo(const EpidemicParams& params, const CaputoOrders& orders, const GridSpec& grid) {
  params.validate();
  orders.validate();
  grid.validate();
  const L1Weights w1 = l1_weights(orders.alpha1, grid.n_steps);
  if (orders.alpha2 == orders.alpha1) return solve_caputo(params, w1, w1, grid);
  return solve_caputo(params, w1, l1_weights(orders.alpha2, grid.n_steps), grid);
}

Trajectory solve_caputo(const EpidemicParams& params, const L1Weights& s_weights, const L1Weights& i_weights,
                        const GridSpec& grid) {
  params.validate();
  grid.validate();
  require_table(s_weights, grid.n_steps);
  require_table(i_weights, grid.n_steps);

  const double dt = grid.dt();
  MemoryComponent s(s_weights, dt, params.s0);
  MemoryComponent i(i_weights, dt, params.i0);

  Trajectory traj;
  traj.model_tag = ModelTag::Caputo;
  traj.reserve(grid.n_steps + 1);
  traj.push_back(0.0, params.s0, params.i0);

  for (std::size_t n = 0; n < grid.n_steps; ++n) {
    const double s_n = s.current();
    const double i_n = i.current();
    if (!(s_n + i_n > 0.0)) throw PopulationCollapse(n, std::move(traj));
    const double f = sis_field(s_n, i_n, params);
    const double s_next = s.advance(f);
    const double i_next = i.advance(-f);
    traj.push_back(grid.time(n + 1), s_next, i_next);
  }
  const std::size_t last = grid.n_steps;
  if (!(traj.total(last) > 0.0)) throw PopulationCollapse(last, std::move(traj));
  return traj;
}

std::vector<std::vector<double>> solve_caputo_generic(const VectorField& field, std::span<const double> orders,
                                                      std::span<const double> y0, const GridSpec& grid) {
  grid.validate();
  if (orders.size() != y0.size()) throw DomainError("orders and y0 must have the same dimension");
  if (y0.empty()) throw DomainError("state dimension must be positive");
  const std::size_t dim = y0.size();

  std::vector<L1Weights> tables;
  tables.reserve(dim);
  for (double alpha : orders) tables.push_back(l1_weights(alpha, grid.n_steps));

  const double dt = grid.dt();
  std::vector<MemoryComponent> components;
  components.reserve(dim);
  for (std::size_t d = 0; d < dim; ++d) components.emplace_back(tables[d], dt, y0[d]);

  std::vector<std::vector<double>> states;
  states.reserve(grid.n_steps + 1);
  states.emplace_back(y0.begin(), y0.end());

  for (std::size_t n = 0; n < grid.n_steps; ++n) {
    std::vector<double> rate;
    try {
      rate = field(states.back());
    } catch (const std::exception& e) {
      throw FieldEvaluationError(n, e.what());
    }
    if (rate.size() != dim) throw FieldEvaluationError(n, "field returned a state of the wrong dimension");
    std::vector<double> next(dim);
    for (std::size_t d = 0; d < dim; ++d) next[d] = components[d].advance(rate[d]);
    states.push_back(std::move(next));
  }
  return states;
}

}  // namespace fracsis
