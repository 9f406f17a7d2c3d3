#include "fracsis/core.hpp"

#include <cmath>
#include <sstream>

namespace fracsis {

namespace {

bool in_unit_order_range(double alpha) { return alpha > 0.0 && alpha <= 1.0; }

std::string describe(std::string_view what, double value) {
  std::ostringstream os;
  os << what << " (got " << value << ")";
  return os.str();
}

}  // namespace

void EpidemicParams::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError(describe("beta must be positive", beta));
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError(describe("gamma must be positive", gamma));
  if (!(s0 >= 0.0) || !std::isfinite(s0)) throw DomainError(describe("s0 must be nonnegative", s0));
  if (!(i0 >= 0.0) || !std::isfinite(i0)) throw DomainError(describe("i0 must be nonnegative", i0));
  if (!(s0 + i0 > 0.0)) throw DomainError("s0 + i0 must be positive");
}

void CaputoOrders::validate() const {
  if (!in_unit_order_range(alpha1)) throw DomainError(describe("alpha1 must lie in (0, 1]", alpha1));
  if (!in_unit_order_range(alpha2)) throw DomainError(describe("alpha2 must lie in (0, 1]", alpha2));
}

void CFOrder::validate() const {
  if (!in_unit_order_range(alpha)) throw DomainError(describe("alpha must lie in (0, 1]", alpha));
  if (!std::isfinite(m_alpha) || m_alpha < alpha) {
    std::ostringstream os;
    os << "assumption violated: M(alpha) >= alpha (M(alpha) = " << m_alpha << ", alpha = " << alpha << ")";
    throw AssumptionError(os.str());
  }
}

void CFOrder::validate(const EpidemicParams& params) const {
  validate();
  params.validate();
  if (alpha < 1.0 && !(params.gamma < alpha / (1.0 - alpha))) {
    std::ostringstream os;
    os << "assumption violated: gamma < alpha / (1 - alpha) (gamma = " << params.gamma
       << ", alpha / (1 - alpha) = " << alpha / (1.0 - alpha) << ")";
    throw AssumptionError(os.str());
  }
}

double GridSpec::time(std::size_t k) const {
  // Last point is pinned to t_end so that round-off in k * dt never overshoots.
  if (k == n_steps) return t_end;
  return static_cast<double>(k) * dt();
}

void GridSpec::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError(describe("t_end must be positive", t_end));
  if (n_steps < 1) throw DomainError("n_steps must be at least 1");
}

std::string_view to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::Caputo:
      return "caputo";
    case ModelTag::CaputoFabrizio:
      return "caputo_fabrizio";
  }
  return "unknown";
}

std::vector<double> Trajectory::totals() const {
  std::vector<double> n(size());
  for (std::size_t k = 0; k < size(); ++k) n[k] = total(k);
  return n;
}

void Trajectory::reserve(std::size_t n) {
  times.reserve(n);
  s.reserve(n);
  i.reserve(n);
}

void Trajectory::push_back(double t, double s_value, double i_value) {
  times.push_back(t);
  s.push_back(s_value);
  i.push_back(i_value);
}

double sis_field(double s, double i, const EpidemicParams& params) {
  const double n = s + i;
  if (!(n > 0.0)) throw DomainError(describe("sis_field requires s + i > 0", n));
  return (params.gamma - params.beta * s / n) * i;
}

double gamma_function(double z) {
  if (!(z > 0.0)) throw DomainError(describe("gamma_function requires z > 0", z));
  // glibc tgamma is accurate to a few ulp on (0, 3], well inside 1e-12 relative.
  return std::tgamma(z);
}

}  // namespace fracsis
