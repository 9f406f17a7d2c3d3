// fracsis command line tool.
//
// Exit codes: 0 success, 1 validation failure, 2 input error, 3 solver error.

#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fracsis/caputo_l1.hpp"
#include "fracsis/cf_model.hpp"
#include "fracsis/existence.hpp"
#include "fracsis/output.hpp"
#include "fracsis/scenario.hpp"
#include "fracsis/validation.hpp"

namespace {

using namespace fracsis;

constexpr int kExitValidation = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

struct SimulateArgs {
  std::string scenario_file;
  std::optional<std::string> model;
  std::optional<std::string> label;
  ScenarioFields fields;
  std::string out_dir;
  std::string format = "csv";
};

// Flags that mirror the numeric scenario fields.
void add_field_flags(CLI::App* cmd, ScenarioFields& f) {
  cmd->add_option("--beta", f.beta, "infection rate");
  cmd->add_option("--gamma", f.gamma, "recovery rate");
  cmd->add_option("--s0", f.s0, "initial susceptibles");
  cmd->add_option("--i0", f.i0, "initial infected");
  cmd->add_option("--alpha1", f.alpha1, "Caputo order of the S equation");
  cmd->add_option("--alpha2", f.alpha2, "Caputo order of the I equation");
  cmd->add_option("--alpha", f.alpha, "Caputo-Fabrizio order");
  cmd->add_option("--m-alpha", f.m_alpha, "scaling factor M(alpha)");
  cmd->add_option("--t-end", f.t_end, "final time");
  cmd->add_option("--n-steps", f.n_steps, "number of grid steps");
}

ScenarioSet build_set(const SimulateArgs& args, std::optional<ScenarioModel> forced) {
  if (!args.scenario_file.empty()) {
    ScenarioSet set = load_scenario_file(args.scenario_file);
    // Flags override every member of the file.
    for (Scenario& sc : set.members) {
      ScenarioFields f;
      f.beta = sc.params.beta;
      f.gamma = sc.params.gamma;
      f.s0 = sc.params.s0;
      f.i0 = sc.params.i0;
      if (sc.caputo_orders) {
        f.alpha1 = sc.caputo_orders->alpha1;
        f.alpha2 = sc.caputo_orders->alpha2;
      }
      if (sc.cf_order) {
        f.alpha = sc.cf_order->alpha;
        f.m_alpha = sc.cf_order->m_alpha;
      }
      f.t_end = sc.grid.t_end;
      f.n_steps = sc.grid.n_steps;
      f.merge(args.fields);
      const ScenarioModel model = forced ? *forced : args.model ? parse_model(*args.model) : sc.model;
      sc = make_scenario(model, f, sc.label);
    }
    if (args.label) set.label = *args.label;
    return set;
  }
  const ScenarioModel model = forced ? *forced : parse_model(args.model.value_or("caputo"));
  ScenarioSet set;
  set.label = args.label.value_or(std::string(to_string(model)));
  set.members.push_back(make_scenario(model, args.fields, set.label));
  return set;
}

void print_equilibria(std::ostream& os, const std::string& label, const EquilibriumReport& eq) {
  os << std::setprecision(12) << label << ": R = " << eq.reproduction_number << ", I* = " << eq.i_star
     << ", S* = " << eq.s_star << ", N* = " << eq.n_star << ", N(t) " << to_string(eq.n_monotonicity) << '\n';
}

int run_simulate(const SimulateArgs& args, std::optional<ScenarioModel> forced) {
  if (args.format != "csv" && args.format != "csv+plot") throw ScenarioError("--format must be csv or csv+plot");
  const ScenarioSet set = build_set(args, forced);
  const std::vector<RunResult> results = run_scenarios(set.members);

  for (const RunResult& r : results) {
    if (r.equilibria) print_equilibria(std::cerr, r.scenario.label, *r.equilibria);
  }
  if (!args.out_dir.empty()) {
    for (const auto& path : write_results(set, results, args.out_dir, args.format == "csv+plot")) {
      std::cerr << "wrote " << path.string() << '\n';
    }
    return 0;
  }
  if (args.format == "csv+plot") throw ScenarioError("--format csv+plot requires --out");
  for (const RunResult& r : results) {
    if (results.size() > 1) std::cout << "# " << r.scenario.label << '\n';
    if (r.caputo && r.cf) {
      emit_compare_csv(std::cout, *r.caputo, *r.cf);
    } else {
      emit_csv(std::cout, r.caputo ? *r.caputo : *r.cf);
    }
  }
  return 0;
}

EpidemicParams params_from(const ScenarioFields& f) {
  const auto need = [](const std::optional<double>& v, const char* flag) {
    if (!v) throw ScenarioError(std::string("missing required flag ") + flag);
    return *v;
  };
  EpidemicParams p{need(f.beta, "--beta"), need(f.gamma, "--gamma"), need(f.s0, "--s0"), need(f.i0, "--i0")};
  p.validate();
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional SIS epidemic models: mixed-order Caputo and Caputo-Fabrizio"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run a scenario file or a one-off scenario given by flags");
  simulate->add_option("scenario", sim.scenario_file, "scenario JSON file")->check(CLI::ExistingFile);
  simulate->add_option("--model", sim.model, "caputo, caputo_fabrizio or compare");
  simulate->add_option("--label", sim.label, "output label");
  add_field_flags(simulate, sim.fields);
  simulate->add_option("--out", sim.out_dir, "output directory (default: CSV on stdout)");
  simulate->add_option("--format", sim.format, "csv or csv+plot");

  SimulateArgs cmp;
  auto* compare = app.add_subcommand("compare", "run Caputo and Caputo-Fabrizio side by side (alpha1 = alpha, alpha2 = 1)");
  compare->add_option("scenario", cmp.scenario_file, "scenario JSON file")->check(CLI::ExistingFile);
  compare->add_option("--label", cmp.label, "output label");
  add_field_flags(compare, cmp.fields);
  compare->add_option("--out", cmp.out_dir, "output directory (default: CSV on stdout)");
  compare->add_option("--format", cmp.format, "csv or csv+plot");

  ScenarioFields hz;
  double epsilon = 0.5;
  auto* horizon = app.add_subcommand("horizon", "existence horizon and invariance box of the Caputo model");
  add_field_flags(horizon, hz);
  horizon->add_option("--epsilon", epsilon, "box half-width factor for gamma >= beta")->capture_default_str();

  ScenarioFields eqf;
  auto* equilibria = app.add_subcommand("equilibria", "equilibria and N(t) monotonicity of the CF model");
  add_field_flags(equilibria, eqf);

  ScenarioFields inv;
  double n_inf = std::numeric_limits<double>::quiet_NaN();
  bool bisection = false;
  auto* invert = app.add_subcommand("invert-alpha", "recover the CF order from the long-run total population");
  add_field_flags(invert, inv);
  invert->add_option("--n-inf", n_inf, "observed limit of S + I")->required();
  invert->add_flag("--bisection", bisection, "solve the defining equation numerically instead of in closed form");

  ValidationOptions vopts;
  auto* validate_cmd = app.add_subcommand("validate", "run the built-in invariant and oracle suite");
  validate_cmd->add_option("--conservation-tol", vopts.conservation_tol, "tolerance for discrete conservation")
      ->capture_default_str();
  validate_cmd->add_flag("--corrupt-weights", vopts.corrupt_weights, "perturb the weight tables (mutation check)");
  validate_cmd->add_option("--seed", vopts.seed, "seed for randomized draws")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*simulate) return run_simulate(sim, std::nullopt);
    if (*compare) return run_simulate(cmp, ScenarioModel::Compare);

    if (*horizon) {
      const EpidemicParams p = params_from(hz);
      if (!hz.alpha1 || !hz.alpha2) throw ScenarioError("horizon requires --alpha1 and --alpha2");
      const CaputoOrders o{*hz.alpha1, *hz.alpha2};
      o.validate();
      std::cout << std::setprecision(15) << "existence_horizon " << existence_horizon(p, o) << '\n';
      const InvarianceBox box = invariance_box(p, o, epsilon);
      std::cout << "box_epsilon " << box.epsilon << "\nbox_horizon " << box.horizon << "\nbox_s [" << box.x_lo
                << ", " << box.x_hi << "]\nbox_i [" << box.y_lo << ", " << box.y_hi << "]\n";
      return 0;
    }
    if (*equilibria) {
      const EpidemicParams p = params_from(eqf);
      if (!eqf.alpha) throw ScenarioError("equilibria requires --alpha");
      const CFOrder order{*eqf.alpha, eqf.m_alpha.value_or(1.0)};
      const CFConstants c = cf_constants(p, order);
      const EquilibriumReport eq = cf_equilibria(p, order);
      std::cout << std::setprecision(15) << "B_alpha " << c.b_alpha << "\nC_alpha " << c.c_alpha << "\nP_alpha "
                << c.p_alpha << "\nR " << eq.reproduction_number << "\ni_star " << eq.i_star << "\ns_star "
                << eq.s_star << "\nn_star " << eq.n_star << "\nn_monotonicity " << to_string(eq.n_monotonicity)
                << '\n';
      return 0;
    }
    if (*invert) {
      const EpidemicParams p = params_from(inv);
      const double alpha = bisection ? invert_alpha(p, n_inf, [](double) { return 1.0; }) : invert_alpha(p, n_inf);
      std::cout << std::setprecision(15) << "alpha " << alpha << '\n';
      return 0;
    }
    if (*validate_cmd) {
      const ValidationReport report = validate(vopts);
      print_report(std::cout, report);
      return report.all_passed() ? 0 : kExitValidation;
    }
  } catch (const ScenarioRunError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    if (e.partial()) std::cerr << "  computed " << e.partial()->size() << " samples before failing\n";
    return kExitSolver;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
