#include "fracsis/scenario.hpp"

#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fracsis {

using nlohmann::json;

namespace {

const std::set<std::string>& numeric_keys() {
  static const std::set<std::string> keys{"beta",  "gamma",   "s0",    "i0",     "alpha1",
                                          "alpha2", "alpha", "m_alpha", "t_end", "n_steps"};
  return keys;
}

double number_at(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ScenarioError("field '" + key + "' must be a number");
  return v.get<double>();
}

ScenarioFields read_fields(const json& obj, const std::set<std::string>& allowed_extra, std::string_view where) {
  if (!obj.is_object()) throw ScenarioError(std::string(where) + " must be a JSON object");
  for (const auto& item : obj.items()) {
    if (!numeric_keys().count(item.key()) && !allowed_extra.count(item.key())) {
      throw ScenarioError("unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
  ScenarioFields f;
  const auto opt = [&](const char* key, std::optional<double>& slot) {
    if (obj.contains(key)) slot = number_at(obj, key);
  };
  opt("beta", f.beta);
  opt("gamma", f.gamma);
  opt("s0", f.s0);
  opt("i0", f.i0);
  opt("alpha1", f.alpha1);
  opt("alpha2", f.alpha2);
  opt("alpha", f.alpha);
  opt("m_alpha", f.m_alpha);
  opt("t_end", f.t_end);
  if (obj.contains("n_steps")) {
    const json& v = obj.at("n_steps");
    if (!v.is_number_integer() || v.get<long long>() < 1) {
      throw ScenarioError("field 'n_steps' must be a positive integer");
    }
    f.n_steps = v.get<std::size_t>();
  }
  return f;
}

std::string string_at(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ScenarioError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

double required(const std::optional<double>& v, const char* name) {
  if (!v) throw ScenarioError(std::string("missing required field '") + name + "'");
  return *v;
}

}  // namespace

ScenarioRunError::ScenarioRunError(const std::string& label, const std::string& what,
                                   std::optional<Trajectory> partial)
    : SolverError(label + ": " + what), label_(label), partial_(std::move(partial)) {}

std::string_view to_string(ScenarioModel model) {
  switch (model) {
    case ScenarioModel::Caputo:
      return "caputo";
    case ScenarioModel::CaputoFabrizio:
      return "caputo_fabrizio";
    case ScenarioModel::Compare:
      return "compare";
  }
  return "unknown";
}

ScenarioModel parse_model(std::string_view name) {
  if (name == "caputo") return ScenarioModel::Caputo;
  if (name == "caputo_fabrizio" || name == "cf") return ScenarioModel::CaputoFabrizio;
  if (name == "compare") return ScenarioModel::Compare;
  throw ScenarioError("unknown model '" + std::string(name) + "' (expected caputo, caputo_fabrizio or compare)");
}

void Scenario::validate() const {
  params.validate();
  grid.validate();
  const bool needs_caputo = model != ScenarioModel::CaputoFabrizio;
  const bool needs_cf = model != ScenarioModel::Caputo;
  if (needs_caputo) {
    if (!caputo_orders) throw ScenarioError(label + ": model requires alpha1 and alpha2");
    caputo_orders->validate();
  }
  if (needs_cf) {
    if (!cf_order) throw ScenarioError(label + ": model requires alpha");
    cf_order->validate(params);
  }
}

void ScenarioFields::merge(const ScenarioFields& over) {
  const auto take = [](auto& mine, const auto& theirs) {
    if (theirs) mine = theirs;
  };
  take(beta, over.beta);
  take(gamma, over.gamma);
  take(s0, over.s0);
  take(i0, over.i0);
  take(alpha1, over.alpha1);
  take(alpha2, over.alpha2);
  take(alpha, over.alpha);
  take(m_alpha, over.m_alpha);
  take(t_end, over.t_end);
  take(n_steps, over.n_steps);
}

Scenario make_scenario(ScenarioModel model, const ScenarioFields& f, std::string label) {
  Scenario sc;
  sc.model = model;
  sc.label = std::move(label);
  sc.params = EpidemicParams{required(f.beta, "beta"), required(f.gamma, "gamma"), required(f.s0, "s0"),
                             required(f.i0, "i0")};
  sc.grid.t_end = f.t_end.value_or(20.0);
  sc.grid.n_steps = f.n_steps.value_or(2000);

  switch (model) {
    case ScenarioModel::Caputo:
      sc.caputo_orders = CaputoOrders{required(f.alpha1, "alpha1"), required(f.alpha2, "alpha2")};
      break;
    case ScenarioModel::CaputoFabrizio:
      sc.cf_order = CFOrder{required(f.alpha, "alpha"), f.m_alpha.value_or(1.0)};
      break;
    case ScenarioModel::Compare: {
      const double alpha = required(f.alpha, "alpha");
      sc.cf_order = CFOrder{alpha, f.m_alpha.value_or(1.0)};
      sc.caputo_orders = CaputoOrders{f.alpha1.value_or(alpha), f.alpha2.value_or(1.0)};
      break;
    }
  }
  sc.validate();
  return sc;
}

ScenarioSet parse_scenario_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("invalid JSON: ") + e.what());
  }
  const ScenarioFields base = read_fields(doc, {"label", "model", "description", "sweep"}, "scenario");
  if (!doc.contains("model")) throw ScenarioError("missing required field 'model'");
  const ScenarioModel model = parse_model(string_at(doc, "model"));

  ScenarioSet set;
  set.label = doc.contains("label") ? string_at(doc, "label") : "scenario";

  if (!doc.contains("sweep")) {
    set.members.push_back(make_scenario(model, base, set.label));
    return set;
  }
  const json& sweep = doc.at("sweep");
  if (!sweep.is_array() || sweep.empty()) throw ScenarioError("'sweep' must be a nonempty array");
  std::set<std::string> seen;
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    ScenarioFields fields = base;
    fields.merge(read_fields(sweep[k], {"label"}, "sweep entry " + std::to_string(k)));
    std::string member = sweep[k].contains("label") ? string_at(sweep[k], "label") : "m" + std::to_string(k);
    if (!seen.insert(member).second) throw ScenarioError("duplicate sweep label '" + member + "'");
    set.members.push_back(make_scenario(model, fields, member));
  }
  return set;
}

ScenarioSet load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str());
}

RunResult run_scenario(const Scenario& scenario) {
  RunResult out;
  out.scenario = scenario;
  try {
    scenario.validate();
    if (scenario.caputo_orders && scenario.model != ScenarioModel::CaputoFabrizio) {
      out.caputo = solve_caputo(scenario.params, *scenario.caputo_orders, scenario.grid);
    }
    if (scenario.cf_order && scenario.model != ScenarioModel::Caputo) {
      out.cf = solve_cf(scenario.params, *scenario.cf_order, scenario.grid);
      out.equilibria = cf_equilibria(scenario.params, *scenario.cf_order);
    }
  } catch (const PopulationCollapse& e) {
    throw ScenarioRunError(scenario.label, e.what(), e.partial());
  } catch (const SolverError& e) {
    throw ScenarioRunError(scenario.label, e.what());
  }
  return out;
}

std::vector<RunResult> run_scenarios(const std::vector<Scenario>& members) {
  std::vector<std::future<RunResult>> pending;
  pending.reserve(members.size());
  for (const Scenario& sc : members) pending.push_back(std::async(std::launch::async, run_scenario, std::cref(sc)));
  std::vector<RunResult> results;
  results.reserve(members.size());
  for (auto& f : pending) results.push_back(f.get());
  return results;
}

}  // namespace fracsis
