#include "wpfp/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wpfp/errors.hpp"
#include "wpfp/moment_oracle.hpp"

namespace wpfp {

namespace {

const char* axis_name(StudyAxis axis) {
  switch (axis) {
    case StudyAxis::M: return "M";
    case StudyAxis::N: return "N";
    case StudyAxis::Dt: return "dt";
  }
  return "?";
}

RunConfig with_axis(const RunConfig& base, StudyAxis axis, double value, double spatial_dt) {
  RunConfig cfg = base;
  const GridSpec& g = *base.grid;
  switch (axis) {
    case StudyAxis::M:
      cfg.grid = std::make_shared<GridSpec>(
          build_grid(g.a, g.b, g.c, g.d, static_cast<int>(value), g.N));
      cfg.dt = spatial_dt;
      break;
    case StudyAxis::N:
      cfg.grid = std::make_shared<GridSpec>(
          build_grid(g.a, g.b, g.c, g.d, g.M, static_cast<int>(value)));
      cfg.dt = spatial_dt;
      break;
    case StudyAxis::Dt:
      cfg.dt = value;
      break;
  }
  // observables are not needed during studies; record endpoints only
  cfg.observable_cadence = std::max<int>(1, static_cast<int>(std::lround(cfg.t_final / cfg.dt)));
  return cfg;
}

double fit_slope(const std::vector<double>& log_x, const std::vector<double>& log_e) {
  const std::size_t n = log_x.size();
  double sx = 0, se = 0, sxx = 0, sxe = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += log_x[i];
    se += log_e[i];
    sxx += log_x[i] * log_x[i];
    sxe += log_x[i] * log_e[i];
  }
  return (n * sxe - sx * se) / (n * sxx - sx * sx);
}

} // namespace

WignerField restrict_to_grid(const WignerField& fine, std::shared_ptr<const GridSpec> coarse) {
  const GridSpec& gf = *fine.grid;
  const GridSpec& gc = *coarse;
  if (gf.a != gc.a || gf.b != gc.b || gf.c != gc.c || gf.d != gc.d)
    throw config_error("restrict_to_grid: domain bounds differ");
  if (gf.M % gc.M != 0 || gf.N % gc.N != 0 || (gf.M == gc.M && gf.N == gc.N))
    throw config_error("restrict_to_grid: fine grid must be a strict nested refinement");
  const int rx = gf.M / gc.M, rn = gf.N / gc.N;
  WignerField out(std::move(coarse));
  out.time = fine.time;
  for (int m = 0; m < gc.M; ++m)
    for (int l = 0; l < gc.N; ++l) out(m, l) = fine(m * rx, l * rn);
  return out;
}

WignerField reference_field(const ExperimentPreset& preset, double T) {
  const RunConfig& run = preset.config.run;
  const GaussianIC ic = normalize_gaussian_ic(run.ic);
  const MomentState ms = harmonic_moment_evolution(ic, run.params, T);
  return gaussian_from_moments(ms, run.grid);
}

ConvergenceReport convergence_study(const ExperimentPreset& preset, StudyAxis axis,
                                    const std::vector<double>& samples) {
  if (samples.size() < 2) throw config_error("convergence_study: need at least two samples");
  const RunConfig& base = preset.config.run;

  ConvergenceReport report;
  report.preset_id = preset.id;
  report.axis = axis;

  // validate samples against the reference resolution
  if (axis == StudyAxis::Dt) {
    for (std::size_t i = 1; i < samples.size(); ++i)
      if (!(samples[i] < samples[i - 1]))
        throw config_error("convergence_study: dt samples must be strictly decreasing");
    if (preset.reference == ReferenceStrategy::FineGridSelfReference)
      for (double s : samples)
        if (!(preset.reference_dt < s))
          throw config_error("convergence_study: reference dt must be strictly smaller "
                             "than every sample");
  } else {
    for (std::size_t i = 1; i < samples.size(); ++i)
      if (!(samples[i] > samples[i - 1]))
        throw config_error("convergence_study: grid samples must be strictly increasing");
    if (preset.reference == ReferenceStrategy::FineGridSelfReference) {
      const int ref = (axis == StudyAxis::M) ? preset.reference_m : preset.reference_n;
      for (double s : samples)
        if (!(static_cast<int>(s) < ref))
          throw config_error("convergence_study: reference grid must be strictly finer "
                             "than every sample");
    }
  }

  // self-reference solution, computed once on the fine grid
  WignerField self_ref;
  if (preset.reference == ReferenceStrategy::FineGridSelfReference) {
    RunConfig ref_cfg = base;
    const GridSpec& g = *base.grid;
    ref_cfg.grid = std::make_shared<GridSpec>(
        build_grid(g.a, g.b, g.c, g.d, preset.reference_m, preset.reference_n));
    ref_cfg.dt = preset.reference_dt;
    ref_cfg.observable_cadence =
        std::max<int>(1, static_cast<int>(std::lround(ref_cfg.t_final / ref_cfg.dt)));
    self_ref = run_simulation(ref_cfg).field;
    std::ostringstream os;
    os << "self-reference " << preset.reference_m << "x" << preset.reference_n << " grid, dt="
       << preset.reference_dt << " (desk-scaled)";
    report.reference_desc = os.str();
  } else {
    report.reference_desc = "analytic moment oracle";
  }

  for (double value : samples) {
    const RunConfig cfg = with_axis(base, axis, value, preset.spatial_study_dt);
    const auto t0 = std::chrono::steady_clock::now();
    const WignerField numeric = run_simulation(cfg).field;
    const auto t1 = std::chrono::steady_clock::now();

    WignerField ref;
    if (preset.reference == ReferenceStrategy::AnalyticOracle) {
      const MomentState ms =
          harmonic_moment_evolution(normalize_gaussian_ic(cfg.ic), cfg.params, cfg.t_final);
      ref = gaussian_from_moments(ms, cfg.grid);
    } else {
      ref = same_grid(*self_ref.grid, *cfg.grid) ? self_ref : restrict_to_grid(self_ref, cfg.grid);
    }

    const auto [l2, linf] = error_norms(numeric, ref);
    ConvergenceSample sample;
    sample.value = value;
    sample.l2 = l2;
    sample.linf = linf;
    sample.runtime_s = std::chrono::duration<double>(t1 - t0).count();
    report.samples.push_back(sample);
  }

  std::vector<double> log_x, log_l2, log_linf;
  for (const auto& s : report.samples) {
    // orders are slopes of log error against log dt (or log h = -log M)
    const double x = (axis == StudyAxis::Dt) ? s.value : 1.0 / s.value;
    log_x.push_back(std::log2(x));
    log_l2.push_back(std::log2(s.l2));
    log_linf.push_back(std::log2(s.linf));
  }
  for (std::size_t i = 0; i + 1 < report.samples.size(); ++i) {
    const double dx = log_x[i] - log_x[i + 1];
    report.pair_orders_l2.push_back((log_l2[i] - log_l2[i + 1]) / dx);
    report.pair_orders_linf.push_back((log_linf[i] - log_linf[i + 1]) / dx);
  }
  report.fit_order_l2 = fit_slope(log_x, log_l2);
  report.fit_order_linf = fit_slope(log_x, log_linf);
  return report;
}

void write_convergence_report(const ConvergenceReport& report, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw config_error("write_convergence_report: cannot open '" + path + "'");
  os << "# preset=" << report.preset_id << " axis=" << axis_name(report.axis)
     << " reference=" << report.reference_desc << "\n";
  os << "# fit_order_l2=" << report.fit_order_l2 << " fit_order_linf=" << report.fit_order_linf
     << "\n";
  os << axis_name(report.axis) << ",l2,linf,pair_order_l2,pair_order_linf,runtime_s\n";
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const auto& s = report.samples[i];
    os << s.value << "," << s.l2 << "," << s.linf << ",";
    if (i < report.pair_orders_l2.size())
      os << report.pair_orders_l2[i] << "," << report.pair_orders_linf[i];
    else
      os << ",";
    os << "," << s.runtime_s << "\n";
  }
}

bool temporal_order_ok(const ConvergenceReport& report, const ExperimentPreset& preset) {
  return report.fit_order_l2 >= preset.order_low && report.fit_order_l2 <= preset.order_high &&
         report.fit_order_linf >= preset.order_low && report.fit_order_linf <= preset.order_high;
}

bool spectral_decay_ok(const ConvergenceReport& report, const ExperimentPreset& preset) {
  if (report.samples.size() < 2) return false;
  const auto& coarse = report.samples.front();
  const auto& fine = report.samples.back();
  const bool l2_ok =
      fine.l2 <= preset.spectral_error_cap || coarse.l2 / fine.l2 >= preset.spectral_ratio;
  const bool linf_ok =
      fine.linf <= preset.spectral_error_cap || coarse.linf / fine.linf >= preset.spectral_ratio;
  return l2_ok && linf_ok;
}

SteadyVerdict steady_verdict(const ObservableSeries& series, double threshold, int window) {
  SteadyVerdict verdict;
  const auto& records = series.records;
  const double n0 = series.n0;
  for (const auto& r : records)
    verdict.max_mass_drift =
        std::max(verdict.max_mass_drift, std::fabs(r.n - n0) / std::fabs(n0));

  // earliest record index from which every residual through the end
  // stays below the threshold (first record has no residual)
  std::size_t onset = records.size();
  for (std::size_t i = records.size(); i-- > 1;) {
    if (std::isfinite(records[i].residual) && records[i].residual < threshold)
      onset = i;
    else
      break;
  }
  if (onset < records.size() && records.size() - onset >= static_cast<std::size_t>(window)) {
    verdict.reached = true;
    verdict.t_steady = records[onset].t;
  }
  return verdict;
}

SteadyResult steady_state_run(const ExperimentPreset& preset, double t_max, double threshold,
                              int window) {
  RunConfig cfg = preset.config.run;
  cfg.t_final = t_max;
  SteadyResult result;
  result.series = run_simulation(cfg).series;
  result.verdict = steady_verdict(result.series, threshold, window);
  return result;
}

SteadyResult steady_state_run(const ExperimentPreset& preset) {
  return steady_state_run(preset, preset.t_max, preset.steady_threshold, preset.steady_window);
}

} // namespace wpfp
