#include "fracsis/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fracsis/scenario.hpp"

namespace fracsis {

namespace {

constexpr int kSignificantDigits = 12;

void check_same_grid(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compare trajectories have different lengths");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.times[k] != b.times[k]) throw std::invalid_argument("compare trajectories have different time samples");
  }
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size()) {
    throw std::runtime_error("malformed number '" + cell + "' on CSV row " + std::to_string(row));
  }
  return v;
}

// Python string literal with the characters we might put in labels escaped.
std::string py_str(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\\' || c == '\'') out += '\\';
    out += c;
  }
  return out + "'";
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");

  // Round to 12 significant digits via scientific notation, then lay the
  // digits out in plain decimal form.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", kSignificantDigits - 1, std::abs(value));
  const std::string sci(buf);
  const auto e_pos = sci.find('e');
  std::string digits = sci.substr(0, 1) + sci.substr(2, e_pos - 2);
  const int exponent = std::atoi(sci.c_str() + e_pos + 1);

  std::string out = value < 0 ? "-" : "";
  if (exponent >= kSignificantDigits - 1) {
    out += digits + std::string(static_cast<std::size_t>(exponent - (kSignificantDigits - 1)), '0');
    return out;
  }
  std::string body;
  if (exponent >= 0) {
    body = digits.substr(0, static_cast<std::size_t>(exponent) + 1) + "." +
           digits.substr(static_cast<std::size_t>(exponent) + 1);
  } else {
    body = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
  }
  while (body.back() == '0') body.pop_back();
  if (body.back() == '.') body.pop_back();
  return out + body;
}

void emit_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.size() == 0) throw std::invalid_argument("cannot emit an empty trajectory");
  os << "t,S,I,N\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_number(traj.times[k]) << ',' << format_number(traj.s[k]) << ',' << format_number(traj.i[k]) << ','
       << format_number(traj.total(k)) << '\n';
  }
}

void emit_compare_csv(std::ostream& os, const Trajectory& caputo, const Trajectory& cf) {
  if (caputo.size() == 0) throw std::invalid_argument("cannot emit an empty trajectory");
  check_same_grid(caputo, cf);
  os << "t,S_caputo,I_caputo,N_caputo,S_cf,I_cf,N_cf\n";
  for (std::size_t k = 0; k < caputo.size(); ++k) {
    os << format_number(caputo.times[k]) << ',' << format_number(caputo.s[k]) << ','
       << format_number(caputo.i[k]) << ',' << format_number(caputo.total(k)) << ',' << format_number(cf.s[k])
       << ',' << format_number(cf.i[k]) << ',' << format_number(cf.total(k)) << '\n';
  }
}

Trajectory parse_csv(std::istream& is, ModelTag tag) {
  std::string line;
  if (!std::getline(is, line) || line != "t,S,I,N") throw std::runtime_error("expected CSV header 't,S,I,N'");
  Trajectory traj;
  traj.model_tag = tag;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != 4) throw std::runtime_error("expected 4 columns on CSV row " + std::to_string(row));
    traj.push_back(parse_cell(cells[0], row), parse_cell(cells[1], row), parse_cell(cells[2], row));
  }
  if (traj.size() == 0) throw std::runtime_error("CSV has no data rows");
  return traj;
}

void emit_plot_script(std::ostream& os, const PlotSpec& spec) {
  os << "#!/usr/bin/env python3\n"
        "# Generated by fracsis. Run from any directory: python3 <this file>\n"
        "import csv\n"
        "import os\n"
        "\n"
        "import matplotlib\n"
        "matplotlib.use('Agg')\n"
        "import matplotlib.pyplot as plt\n"
        "\n"
        "HERE = os.path.dirname(os.path.abspath(__file__))\n"
        "\n"
        "\n"
        "def load(name):\n"
        "    with open(os.path.join(HERE, name), newline='') as fh:\n"
        "        rows = list(csv.DictReader(fh))\n"
        "    return {key: [float(r[key]) for r in rows] for key in rows[0]}\n"
        "\n"
        "\n"
        "# (csv file, label, compare layout, equilibria (S*, I*, N*) or None)\n"
        "SERIES = [\n";
  for (const PlotSeries& s : spec.series) {
    os << "    (" << py_str(s.csv_file) << ", " << py_str(s.label) << ", " << (s.compare ? "True" : "False") << ", ";
    if (s.equilibria) {
      os << "(" << format_number(s.equilibria->s_star) << ", " << format_number(s.equilibria->i_star) << ", "
         << format_number(s.equilibria->n_star) << ")";
    } else {
      os << "None";
    }
    os << "),\n";
  }
  os << "]\n"
        "\n"
        "fig, axes = plt.subplots(1, 3, figsize=(15, 4.5))\n"
        "panels = [('S', 'S(t)'), ('I', 'I(t)'), ('N', 'S(t)+I(t)')]\n"
        "for csv_file, label, compare, eq in SERIES:\n"
        "    data = load(csv_file)\n"
        "    for k, (col, title) in enumerate(panels):\n"
        "        ax = axes[k]\n"
        "        if compare:\n"
        "            line, = ax.plot(data['t'], data[col + '_caputo'], label=label + ' Caputo')\n"
        "            ax.plot(data['t'], data[col + '_cf'], linestyle='-.', color=line.get_color(),\n"
        "                    label=label + ' CF')\n"
        "        else:\n"
        "            line, = ax.plot(data['t'], data[col], label=label)\n"
        "        if eq is not None:\n"
        "            ax.axhline(eq[k], linestyle='--', linewidth=0.8, color=line.get_color())\n"
        "        ax.set_title(title)\n"
        "        ax.set_xlabel('t')\n"
        "axes[2].legend(fontsize='small')\n"
        "fig.suptitle("
     << py_str(spec.title)
     << ")\n"
        "fig.tight_layout()\n"
        "fig.savefig(os.path.join(HERE, "
     << py_str(spec.image_file)
     << "), dpi=150)\n";
}

std::vector<std::filesystem::path> write_results(const ScenarioSet& set, const std::vector<RunResult>& results,
                                                 const std::filesystem::path& out_dir, bool with_plot) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  PlotSpec plot;
  plot.title = set.label;
  plot.image_file = set.label + ".png";

  for (const RunResult& r : results) {
    const std::string name = results.size() == 1 ? set.label : set.label + "_" + r.scenario.label;
    const std::filesystem::path csv_path = out_dir / (name + ".csv");
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path.string());
    PlotSeries series{csv_path.filename().string(), r.scenario.label, false, r.equilibria};
    if (r.caputo && r.cf) {
      emit_compare_csv(out, *r.caputo, *r.cf);
      series.compare = true;
    } else {
      emit_csv(out, r.caputo ? *r.caputo : *r.cf);
    }
    if (!out) throw std::runtime_error("failed writing " + csv_path.string());
    written.push_back(csv_path);
    plot.series.push_back(std::move(series));
  }

  if (with_plot) {
    const std::filesystem::path script = out_dir / (set.label + "_plot.py");
    std::ofstream out(script);
    if (!out) throw std::runtime_error("cannot write " + script.string());
    emit_plot_script(out, plot);
    written.push_back(script);
  }
  return written;
}

}  // namespace fracsis
