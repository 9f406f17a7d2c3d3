#pragma once

// CSV and plot-script emission.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracsis/cf_model.hpp"
#include "fracsis/core.hpp"

namespace fracsis {

/// Fixed-point decimal with 12 significant digits, trailing zeros removed.
std::string format_number(double value);

/// Header `t,S,I,N`, one row per sample.
void emit_csv(std::ostream& os, const Trajectory& traj);

/// Header `t,S_caputo,I_caputo,N_caputo,S_cf,I_cf,N_cf`. Both trajectories
/// must share the same time samples.
void emit_compare_csv(std::ostream& os, const Trajectory& caputo, const Trajectory& cf);

/// Reads back a `t,S,I,N` table. Throws std::runtime_error on malformed input.
Trajectory parse_csv(std::istream& is, ModelTag tag = ModelTag::Caputo);

/// One curve group in a plot: a CSV file and how to read it.
struct PlotSeries {
  std::string csv_file;  // relative to the script's directory
  std::string label;
  bool compare = false;  // file has the compare layout
  std::optional<EquilibriumReport> equilibria;
};

struct PlotSpec {
  std::string title;
  std::string image_file;  // written next to the script
  std::vector<PlotSeries> series;
};

/// Standalone matplotlib script with three panels S(t), I(t), S(t)+I(t).
/// Series are overlaid; equilibria appear as dashed horizontal lines.
void emit_plot_script(std::ostream& os, const PlotSpec& spec);

}  // namespace fracsis
