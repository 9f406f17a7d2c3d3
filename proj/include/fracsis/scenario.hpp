#pragma once

// Scenario files and batch execution.
//
// A scenario file is one JSON object with flat keys:
//
//   {
//     "label": "fig_cf1", "model": "caputo_fabrizio",
//     "beta": 0.7, "gamma": 0.2, "s0": 6, "i0": 4,
//     "alpha": 0.5, "m_alpha": 1, "t_end": 60, "n_steps": 600,
//     "sweep": [ {"label": "a02", "alpha": 0.2}, ... ]
//   }
//
// model is one of "caputo", "caputo_fabrizio", "compare". Caputo runs need
// alpha1/alpha2, CF runs need alpha (m_alpha defaults to 1). compare pairs
// alpha1 = alpha, alpha2 = 1 unless alpha1/alpha2 are given. Each sweep entry
// overrides any numeric key of the base object and yields one member.
// Unknown keys are rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracsis/caputo_l1.hpp"
#include "fracsis/cf_model.hpp"
#include "fracsis/core.hpp"

namespace fracsis {

/// Malformed or inconsistent scenario input.
class ScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Solver failure while running a labelled scenario. For a population
/// collapse the partial trajectory is kept.
class ScenarioRunError : public SolverError {
 public:
  ScenarioRunError(const std::string& label, const std::string& what, std::optional<Trajectory> partial = {});

  const std::string& label() const { return label_; }
  const std::optional<Trajectory>& partial() const { return partial_; }

 private:
  std::string label_;
  std::optional<Trajectory> partial_;
};

enum class ScenarioModel { Caputo, CaputoFabrizio, Compare };

std::string_view to_string(ScenarioModel model);
ScenarioModel parse_model(std::string_view name);

struct Scenario {
  ScenarioModel model = ScenarioModel::Caputo;
  EpidemicParams params;
  std::optional<CaputoOrders> caputo_orders;
  std::optional<CFOrder> cf_order;
  GridSpec grid{20.0, 2000};
  std::string label = "scenario";

  /// Checks that the orders the model needs are present and valid.
  void validate() const;
};

/// Numeric scenario fields, each optional, as read from JSON or CLI flags.
struct ScenarioFields {
  std::optional<double> beta, gamma, s0, i0;
  std::optional<double> alpha1, alpha2, alpha, m_alpha;
  std::optional<double> t_end;
  std::optional<std::size_t> n_steps;

  /// Fields set in `over` replace those in this object.
  void merge(const ScenarioFields& over);
};

/// Builds a validated scenario; applies defaults (t_end 20, n_steps 2000,
/// m_alpha 1) and the compare pairing.
Scenario make_scenario(ScenarioModel model, const ScenarioFields& fields, std::string label);

struct ScenarioSet {
  std::string label;
  std::vector<Scenario> members;
};

ScenarioSet parse_scenario_json(std::string_view text);
ScenarioSet load_scenario_file(const std::filesystem::path& path);

struct RunResult {
  Scenario scenario;
  std::optional<Trajectory> caputo;
  std::optional<Trajectory> cf;
  std::optional<EquilibriumReport> equilibria;
};

RunResult run_scenario(const Scenario& scenario);

/// Runs members concurrently; results keep the members' order.
std::vector<RunResult> run_scenarios(const std::vector<Scenario>& members);

/// Writes one CSV per member into out_dir (created if missing) and, when
/// with_plot is set, a plotting script overlaying all members. A single
/// member is written as <label>.csv, sweep members as <set>_<member>.csv.
/// Returns the written paths.
std::vector<std::filesystem::path> write_results(const ScenarioSet& set, const std::vector<RunResult>& results,
                                                 const std::filesystem::path& out_dir, bool with_plot);

}  // namespace fracsis
