#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "wpfp/config.hpp"
#include "wpfp/errors.hpp"
#include "wpfp/experiments.hpp"
#include "wpfp/io.hpp"
#include "wpfp/moment_oracle.hpp"
#include "wpfp/splitting.hpp"

namespace {

using namespace wpfp;

ExperimentPreset resolve(const std::string& spec_arg) {
  if (is_preset_id(spec_arg)) return preset(spec_arg);
  ExperimentPreset p;
  p.id = std::filesystem::path(spec_arg).stem().string();
  p.config = load_config(spec_arg, &std::cerr);
  // file-based runs default to self-reference one refinement up
  const GridSpec& g = *p.config.run.grid;
  double c2 = 0, c1 = 0;
  p.reference = quadratic_coefficients(p.config.run.params.potential, c2, c1)
                    ? ReferenceStrategy::AnalyticOracle
                    : ReferenceStrategy::FineGridSelfReference;
  p.reference_m = 2 * g.M;
  p.reference_n = 2 * g.N;
  p.reference_dt = p.config.run.dt / 4;
  p.spatial_study_dt = p.config.run.dt;
  p.t_max = p.config.run.t_final;
  return p;
}

std::string join(const std::filesystem::path& dir, const std::string& name) {
  return (dir / name).string();
}

int cmd_simulate(const std::string& spec_arg, const std::string& out_dir, int snapshots) {
  ExperimentPreset p = resolve(spec_arg);
  if (is_preset_id(spec_arg))
    normalize_gaussian_ic(p.config.run.ic, &std::cerr);  // surface the sign warning
  if (snapshots >= 0) p.config.output.snapshots = snapshots;
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  const long steps = std::lround(p.config.run.t_final / p.config.run.dt);
  const long records = std::max<long>(1, steps / p.config.run.observable_cadence);
  const long stride =
      p.config.output.snapshots > 0 ? std::max<long>(1, records / p.config.output.snapshots) : 0;

  long record_index = 0;
  SimulationSinks sinks;
  if (stride > 0)
    sinks.snapshot = [&](const WignerField& w) {
      if (record_index % stride == 0) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%05ld.wpfp", record_index);
        write_snapshot(w, join(dir, name));
      }
      ++record_index;
    };

  const SimulationResult res = run_simulation(p.config.run, sinks);
  write_snapshot(res.field, join(dir, "final.wpfp"));
  write_series(res.series, join(dir, "series.csv"));
  if (p.config.output.heatmap) write_heatmap(res.field, join(dir, "heatmap.csv"));

  const auto& last = res.series.records.back();
  std::printf("t=%g  N=%.12g  J=%.12g  E=%.12g  (mass drift %.3e)\n", last.t, last.n, last.j,
              last.e, std::fabs(last.n - res.series.n0));
  std::printf("wrote %s and %s\n", join(dir, "final.wpfp").c_str(),
              join(dir, "series.csv").c_str());
  return 0;
}

int cmd_converge(const std::string& spec_arg, const std::string& axis_name,
                 std::vector<double> samples, bool check, const std::string& out_dir) {
  ExperimentPreset p = resolve(spec_arg);
  StudyAxis axis;
  if (axis_name == "M")
    axis = StudyAxis::M;
  else if (axis_name == "N")
    axis = StudyAxis::N;
  else if (axis_name == "dt")
    axis = StudyAxis::Dt;
  else
    throw config_error("--axis must be one of M, N, dt");

  if (samples.empty()) {
    if (axis == StudyAxis::Dt)
      samples = p.dt_samples;
    else
      for (int s : p.space_samples) samples.push_back(s);
    if (samples.empty()) throw config_error("no samples given and the preset has no defaults");
  }

  const ConvergenceReport report = convergence_study(p, axis, samples);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const std::string path = join(dir, "converge_" + p.id + "_" + axis_name + ".csv");
  write_convergence_report(report, path);

  std::printf("reference: %s\n", report.reference_desc.c_str());
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const auto& s = report.samples[i];
    std::printf("  %s=%-10g l2=%.6e linf=%.6e  (%.2fs)\n", axis_name.c_str(), s.value, s.l2,
                s.linf, s.runtime_s);
  }
  std::printf("fitted order: l2=%.3f linf=%.3f  -> %s\n", report.fit_order_l2,
              report.fit_order_linf, path.c_str());

  if (check) {
    const bool ok = (axis == StudyAxis::Dt) ? temporal_order_ok(report, p)
                                            : spectral_decay_ok(report, p);
    std::printf("check: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
  }
  return 0;
}

int cmd_steady(const std::string& spec_arg, double t_max, double threshold, int window,
               bool check, const std::string& out_dir) {
  ExperimentPreset p = resolve(spec_arg);
  if (t_max <= 0) t_max = p.t_max > 0 ? p.t_max : p.config.run.t_final;
  if (threshold <= 0) threshold = p.steady_threshold;
  if (window <= 0) window = p.steady_window;

  const SteadyResult res = steady_state_run(p, t_max, threshold, window);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_series(res.series, join(dir, "series_" + p.id + ".csv"));

  if (res.verdict.reached)
    std::printf("steady: yes, from t=%.4f (threshold %.1e, window %d records)\n",
                res.verdict.t_steady, threshold, window);
  else
    std::printf("steady: no (threshold %.1e not sustained)\n", threshold);
  std::printf("max |N(t)-N(0)|/N(0) = %.3e\n", res.verdict.max_mass_drift);

  if (check) {
    bool ok = res.verdict.reached && res.verdict.max_mass_drift <= p.mass_drift_cap;
    if (p.steady_expect_hi > 0)
      ok = ok && res.verdict.t_steady >= p.steady_expect_lo &&
           res.verdict.t_steady <= p.steady_expect_hi;
    std::printf("check: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
  }
  return 0;
}

int cmd_reference(const std::string& preset_id, double time, const std::string& out_dir) {
  ExperimentPreset p = resolve(preset_id);
  if (time < 0) time = p.config.run.t_final;
  const WignerField ref = reference_field(p, time);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const std::string path = join(dir, "reference_" + p.id + ".wpfp");
  write_snapshot(ref, path);
  std::printf("wrote %s (t=%g)\n", path.c_str(), time);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-splitting Fourier pseudospectral solver for the 1D "
               "Wigner(-Poisson)-Fokker-Planck equations"};
  app.require_subcommand(1);
  app.footer("Presets: ex1 ex2 ex3 (convergence)  ex4a ex4b ex5 (steady states).\n"
             "WPFP_THREADS caps the data-parallel width (default: all cores).");

  std::string spec_arg, out_dir = ".", axis = "dt";
  std::vector<double> samples;
  bool check = false;
  int snapshots = -1, window = 0;
  double t_max = 0, threshold = 0, ref_time = -1;

  CLI::App* simulate = app.add_subcommand("simulate", "run a configuration to T");
  simulate->add_option("config", spec_arg, "preset id or config file")->required();
  simulate->add_option("--out", out_dir, "output directory");
  simulate->add_option("--snapshots", snapshots, "approximate number of field snapshots to write");

  CLI::App* converge = app.add_subcommand("converge", "refinement study against a reference");
  converge->add_option("config", spec_arg, "preset id or config file")->required();
  converge->add_option("--axis", axis, "M, N, or dt")->required();
  converge->add_option("--samples", samples, "sample values (preset defaults if omitted)");
  converge->add_flag("--check", check, "exit nonzero unless the preset targets hold");
  converge->add_option("--out", out_dir, "output directory");

  CLI::App* steady = app.add_subcommand("steady", "long run with steady-state detection");
  steady->add_option("config", spec_arg, "preset id or config file")->required();
  steady->add_option("--tmax", t_max, "final time");
  steady->add_option("--threshold", threshold, "residual threshold (default 1e-3)");
  steady->add_option("--window", window, "records required below threshold (default 16)");
  steady->add_flag("--check", check, "exit nonzero unless steady in the expected window");
  steady->add_option("--out", out_dir, "output directory");

  CLI::App* reference = app.add_subcommand("reference", "emit the analytic reference field");
  reference->add_option("preset", spec_arg, "preset id (quadratic potential required)")
      ->required();
  reference->add_option("--time", ref_time, "evaluation time (default: preset T)");
  reference->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(spec_arg, out_dir, snapshots);
    if (converge->parsed()) return cmd_converge(spec_arg, axis, samples, check, out_dir);
    if (steady->parsed()) return cmd_steady(spec_arg, t_max, threshold, window, check, out_dir);
    if (reference->parsed()) return cmd_reference(spec_arg, ref_time, out_dir);
  } catch (const config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
