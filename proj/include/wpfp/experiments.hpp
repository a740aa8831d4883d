#pragma once

#include <string>
#include <vector>

#include "wpfp/config.hpp"
#include "wpfp/observables.hpp"

namespace wpfp {

enum class StudyAxis { M, N, Dt };

struct ConvergenceSample {
  double value = 0;  // M, N, or dt
  double l2 = 0, linf = 0;
  double runtime_s = 0;
};

struct ConvergenceReport {
  std::string preset_id;
  StudyAxis axis = StudyAxis::Dt;
  std::string reference_desc;
  std::vector<ConvergenceSample> samples;   // in the order given
  std::vector<double> pair_orders_l2;       // log2 error ratios per adjacent pair
  std::vector<double> pair_orders_linf;
  double fit_order_l2 = 0;                  // least-squares slope in log2-log2
  double fit_order_linf = 0;
};

// Runs the study against the preset's reference strategy. For the dt
// axis, samples are time steps; for M/N they are grid counts. The
// reference must be strictly finer than every sample.
ConvergenceReport convergence_study(const ExperimentPreset& preset, StudyAxis axis,
                                    const std::vector<double>& samples);

void write_convergence_report(const ConvergenceReport& report, const std::string& path);

// Pass/fail helpers mirroring the preset targets.
bool temporal_order_ok(const ConvergenceReport& report, const ExperimentPreset& preset);
bool spectral_decay_ok(const ConvergenceReport& report, const ExperimentPreset& preset);

struct SteadyVerdict {
  bool reached = false;
  double t_steady = 0;         // first record of the sustained window
  double max_mass_drift = 0;   // max |N(t) - N(0)| / |N(0)|
};

struct SteadyResult {
  ObservableSeries series;
  SteadyVerdict verdict;
};

// Scans a recorded series: steady is declared from the earliest record
// after which every residual stays below the threshold, provided at
// least `window` records do so.
SteadyVerdict steady_verdict(const ObservableSeries& series, double threshold, int window);

// Runs the preset to t_max and scans the residual trace: steady is
// declared from the earliest record after which every residual through
// t_max stays below the threshold, provided at least `window` records
// do so.
SteadyResult steady_state_run(const ExperimentPreset& preset, double t_max, double threshold,
                              int window);
SteadyResult steady_state_run(const ExperimentPreset& preset);

// Analytic-oracle field for a quadratic-potential preset at time T.
WignerField reference_field(const ExperimentPreset& preset, double T);

// Nested-grid restriction (fine bounds must match; counts must divide).
WignerField restrict_to_grid(const WignerField& fine, std::shared_ptr<const GridSpec> coarse);

} // namespace wpfp
