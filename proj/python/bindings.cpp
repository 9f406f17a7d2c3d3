#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fracsis/caputo_l1.hpp"
#include "fracsis/cf_model.hpp"
#include "fracsis/existence.hpp"
#include "fracsis/integrate.hpp"
#include "fracsis/output.hpp"
#include "fracsis/scenario.hpp"
#include "fracsis/validation.hpp"

namespace py = pybind11;
using namespace fracsis;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fractional SIS epidemic models (mixed-order Caputo and Caputo-Fabrizio)";

  auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<AssumptionError>(m, "AssumptionError", PyExc_ValueError);
  auto solver_error = py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
  (void)domain_error;
  (void)solver_error;

  py::class_<EpidemicParams>(m, "EpidemicParams")
      .def(py::init([](double beta, double gamma, double s0, double i0) {
             EpidemicParams p{beta, gamma, s0, i0};
             p.validate();
             return p;
           }),
           py::arg("beta"), py::arg("gamma"), py::arg("s0"), py::arg("i0"))
      .def_readwrite("beta", &EpidemicParams::beta)
      .def_readwrite("gamma", &EpidemicParams::gamma)
      .def_readwrite("s0", &EpidemicParams::s0)
      .def_readwrite("i0", &EpidemicParams::i0)
      .def_property_readonly("n0", &EpidemicParams::n0)
      .def_property_readonly("reproduction_number", &EpidemicParams::reproduction_number)
      .def("__repr__", [](const EpidemicParams& p) {
        std::ostringstream os;
        os << "EpidemicParams(beta=" << p.beta << ", gamma=" << p.gamma << ", s0=" << p.s0 << ", i0=" << p.i0 << ")";
        return os.str();
      });

  py::class_<CaputoOrders>(m, "CaputoOrders")
      .def(py::init([](double a1, double a2) {
             CaputoOrders o{a1, a2};
             o.validate();
             return o;
           }),
           py::arg("alpha1"), py::arg("alpha2"))
      .def_readwrite("alpha1", &CaputoOrders::alpha1)
      .def_readwrite("alpha2", &CaputoOrders::alpha2);

  py::class_<CFOrder>(m, "CFOrder")
      .def(py::init([](double alpha, double m_alpha) {
             CFOrder o{alpha, m_alpha};
             o.validate();
             return o;
           }),
           py::arg("alpha"), py::arg("m_alpha") = 1.0)
      .def_readwrite("alpha", &CFOrder::alpha)
      .def_readwrite("m_alpha", &CFOrder::m_alpha);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](double t_end, std::size_t n_steps) {
             GridSpec g{t_end, n_steps};
             g.validate();
             return g;
           }),
           py::arg("t_end"), py::arg("n_steps"))
      .def_readwrite("t_end", &GridSpec::t_end)
      .def_readwrite("n_steps", &GridSpec::n_steps)
      .def_property_readonly("dt", &GridSpec::dt);

  // Arrays are copies; the trajectory itself stays immutable from Python.
  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("t", [](const Trajectory& tr) { return to_array(tr.times); })
      .def_property_readonly("S", [](const Trajectory& tr) { return to_array(tr.s); })
      .def_property_readonly("I", [](const Trajectory& tr) { return to_array(tr.i); })
      .def_property_readonly("N", [](const Trajectory& tr) { return to_array(tr.totals()); })
      .def_property_readonly("model", [](const Trajectory& tr) { return std::string(to_string(tr.model_tag)); })
      .def("__len__", &Trajectory::size)
      .def("to_csv", [](const Trajectory& tr) {
        std::ostringstream os;
        emit_csv(os, tr);
        return os.str();
      });

  m.def("sis_field", &sis_field, py::arg("s"), py::arg("i"), py::arg("params"));
  m.def("gamma_function", &gamma_function, py::arg("z"));

  m.def(
      "l1_weights", [](double alpha, std::size_t n) { return to_array(l1_weights(alpha, n).a); }, py::arg("alpha"),
      py::arg("n_steps"), "Coefficients a[k] = (k+1)^(1-alpha) - k^(1-alpha), k < n_steps.");
  m.def(
      "solve_caputo",
      [](const EpidemicParams& p, const CaputoOrders& o, const GridSpec& g) {
        py::gil_scoped_release release;
        return solve_caputo(p, o, g);
      },
      py::arg("params"), py::arg("orders"), py::arg("grid"));

  py::class_<InvarianceBox>(m, "InvarianceBox")
      .def_readonly("x_lo", &InvarianceBox::x_lo)
      .def_readonly("x_hi", &InvarianceBox::x_hi)
      .def_readonly("y_lo", &InvarianceBox::y_lo)
      .def_readonly("y_hi", &InvarianceBox::y_hi)
      .def_readonly("epsilon", &InvarianceBox::epsilon)
      .def_readonly("horizon", &InvarianceBox::horizon)
      .def("contains", &InvarianceBox::contains, py::arg("s"), py::arg("i"));

  m.def("g_bound", &g_bound, py::arg("t"), py::arg("orders"));
  m.def("existence_horizon", &existence_horizon, py::arg("params"), py::arg("orders"));
  m.def("invariance_box", &invariance_box, py::arg("params"), py::arg("orders"), py::arg("epsilon") = 0.5);
  m.def("picard_approximant", &picard_approximant, py::arg("params"), py::arg("orders"), py::arg("n"),
        py::arg("grid"));

  py::class_<CFConstants>(m, "CFConstants")
      .def_readonly("b_alpha", &CFConstants::b_alpha)
      .def_readonly("c_alpha", &CFConstants::c_alpha)
      .def_readonly("p_alpha", &CFConstants::p_alpha);

  py::class_<EquilibriumReport>(m, "EquilibriumReport")
      .def_readonly("reproduction_number", &EquilibriumReport::reproduction_number)
      .def_readonly("i_star", &EquilibriumReport::i_star)
      .def_readonly("s_star", &EquilibriumReport::s_star)
      .def_readonly("n_star", &EquilibriumReport::n_star)
      .def_property_readonly("n_monotonicity",
                             [](const EquilibriumReport& r) { return std::string(to_string(r.n_monotonicity)); });

  m.def("cf_constants", &cf_constants, py::arg("params"), py::arg("order"));
  m.def("cf_invariant", &cf_invariant, py::arg("s"), py::arg("i"), py::arg("params"), py::arg("order"));
  m.def(
      "g_alpha", [](double x, const EpidemicParams& p, const CFOrder& o) { return g_alpha(x, cf_constants(p, o), o); },
      py::arg("x"), py::arg("params"), py::arg("order"));
  m.def(
      "solve_cf",
      [](const EpidemicParams& p, const CFOrder& o, const GridSpec& g, double rel_tol, double abs_tol) {
        IntegratorConfig cfg;
        cfg.rel_tol = rel_tol;
        cfg.abs_tol = abs_tol;
        py::gil_scoped_release release;
        return solve_cf(p, o, g, cfg);
      },
      py::arg("params"), py::arg("order"), py::arg("grid"), py::arg("rel_tol") = 1e-8, py::arg("abs_tol") = 1e-10);
  m.def("cf_equilibria", &cf_equilibria, py::arg("params"), py::arg("order"));
  m.def("cf_limit_total", &cf_limit_total, py::arg("params"), py::arg("order"));
  m.def("min_admissible_alpha", &min_admissible_alpha, py::arg("params"));
  m.def(
      "invert_alpha",
      [](const EpidemicParams& p, double n_inf, std::optional<ScalingFunction> scaling) {
        return scaling ? invert_alpha(p, n_inf, *scaling) : invert_alpha(p, n_inf);
      },
      py::arg("params"), py::arg("n_infinity"), py::arg("scaling") = py::none(),
      "Closed form for M = 1; bisection when a scaling callable M(alpha) is given.");

  m.def(
      "integrate_scalar",
      [](const ScalarRhs& rhs, double y0, const GridSpec& g, double rel_tol, double abs_tol, const std::string& method) {
        IntegratorConfig cfg;
        cfg.rel_tol = rel_tol;
        cfg.abs_tol = abs_tol;
        if (method == "rk45") {
          cfg.method = IntegrationMethod::AdaptiveRK45;
        } else if (method == "trapezoid") {
          cfg.method = IntegrationMethod::ImplicitTrapezoid;
        } else {
          throw DomainError("method must be 'rk45' or 'trapezoid'");
        }
        return to_array(integrate_scalar(rhs, y0, g, cfg));
      },
      py::arg("rhs"), py::arg("y0"), py::arg("grid"), py::arg("rel_tol") = 1e-8, py::arg("abs_tol") = 1e-10,
      py::arg("method") = "rk45");

  m.def(
      "run_scenario_json",
      [](const std::string& text) {
        const ScenarioSet set = parse_scenario_json(text);
        std::vector<RunResult> results;
        {
          py::gil_scoped_release release;
          results = run_scenarios(set.members);
        }
        py::list out;
        for (const RunResult& r : results) {
          py::dict d;
          d["label"] = r.scenario.label;
          d["model"] = std::string(to_string(r.scenario.model));
          d["caputo"] = r.caputo ? py::cast(*r.caputo) : py::none();
          d["cf"] = r.cf ? py::cast(*r.cf) : py::none();
          d["equilibria"] = r.equilibria ? py::cast(*r.equilibria) : py::none();
          out.append(d);
        }
        return out;
      },
      py::arg("text"), "Parse a scenario document and run every member; returns one dict per member.");

  m.def(
      "validate",
      [](double conservation_tol, bool corrupt_weights, unsigned long long seed) {
        ValidationOptions opts;
        opts.conservation_tol = conservation_tol;
        opts.corrupt_weights = corrupt_weights;
        opts.seed = seed;
        ValidationReport report;
        {
          py::gil_scoped_release release;
          report = validate(opts);
        }
        py::list checks;
        for (const CheckResult& c : report.checks) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["informational"] = c.informational;
          d["measured"] = c.measured;
          d["tolerance"] = c.tolerance;
          d["detail"] = c.detail;
          checks.append(d);
        }
        py::dict out;
        out["all_passed"] = report.all_passed();
        out["seconds"] = report.seconds;
        out["checks"] = checks;
        return out;
      },
      py::arg("conservation_tol") = 1e-9, py::arg("corrupt_weights") = false, py::arg("seed") = 20240611ULL);
}
