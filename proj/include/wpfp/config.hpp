#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wpfp/splitting.hpp"

namespace wpfp {

struct OutputOptions {
  int snapshots = 0;      // field snapshots over the run (0 = final only on demand)
  bool heatmap = false;   // also write (x, xi, W) triples for the final field
};

struct LoadedConfig {
  RunConfig run;
  OutputOptions output;
};

// INI-style config with sections [grid] [physics] [initial] [potential]
// [run] [output]; unknown sections/keys are rejected with line numbers.
LoadedConfig load_config(const std::string& path, std::ostream* warn = nullptr);
LoadedConfig parse_config_text(const std::string& text, const std::string& origin,
                               std::ostream* warn = nullptr);

// How a convergence study obtains its reference solution.
enum class ReferenceStrategy { AnalyticOracle, FineGridSelfReference };

struct ExperimentPreset {
  std::string id;
  LoadedConfig config;
  ReferenceStrategy reference = ReferenceStrategy::AnalyticOracle;

  // convergence studies
  std::vector<double> dt_samples;
  std::vector<int> space_samples;      // applied to M or N depending on axis
  double spatial_study_dt = 0;         // dt used for the M/N axes
  double reference_dt = 0;             // self-reference time step
  int reference_m = 0, reference_n = 0;  // self-reference grid
  double order_low = 1.8, order_high = 2.2;
  double spectral_error_cap = 1e-8;    // spatial: error at finest sample <= cap ...
  double spectral_ratio = 1e3;         // ... or coarsest/finest >= ratio

  // steady-state studies
  double t_max = 0;
  double steady_threshold = 1e-3;
  int steady_window = 16;              // consecutive below-threshold records
  double steady_expect_lo = 0, steady_expect_hi = 0;
  double mass_drift_cap = 1e-4;
};

// Built-in experiment presets: ex1, ex2, ex3, ex4a, ex4b, ex5.
ExperimentPreset preset(const std::string& id);
std::vector<std::string> preset_ids();
bool is_preset_id(const std::string& id);

} // namespace wpfp
