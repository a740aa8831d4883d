#include "wpfp/splitting.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wpfp/errors.hpp"
#include "wpfp/poisson.hpp"

namespace wpfp {

std::string validate_params(const PhysicalParams& p) {
  if (!(p.epsilon > 0.0)) throw config_error("params: epsilon must be positive");
  if (p.gamma < 0.0) throw config_error("params: gamma must be >= 0");
  if (p.dpp < 0.0 || p.dqq < 0.0)
    throw config_error("params: Dpp and Dqq must be >= 0");
  const bool psd = p.dqq * p.dpp >= p.dpq * p.dpq;
  if (!psd) {
    std::ostringstream os;
    os << "diffusion matrix [[" << p.dqq << ", " << p.dpq << "], [" << p.dpq << ", " << p.dpp
       << "]] is indefinite (Dqq*Dpp < Dpq^2); some spectral modes are amplified";
    if (!p.allow_indefinite_diffusion) throw config_error("params: " + os.str());
    return "warning: " + os.str() + " (override enabled)";
  }
  return "";
}

const std::vector<SplitStage>& strang_schedule() {
  static const std::vector<SplitStage> schedule = {
      {SplitStage::Convection, 0.5}, {SplitStage::Nonlocal, 0.5}, {SplitStage::Diffusion, 0.5},
      {SplitStage::Friction, 1.0},
      {SplitStage::Diffusion, 0.5}, {SplitStage::Nonlocal, 0.5}, {SplitStage::Convection, 0.5}};
  return schedule;
}

StrangCaches::StrangCaches(std::shared_ptr<const GridSpec> grid, const PhysicalParams& params,
                           double dt, FrictionVariant variant)
    : grid_(std::move(grid)), params_(params), dt_(dt), variant_(variant), fft_(*grid_) {
  validate_params(params_);
  const double half = 0.5 * dt;
  conv_phase_half_ = convection_phase_table(*grid_, half);
  diff_factor_half_ = diffusion_factor_table(*grid_, half, params.dqq, params.dpq, params.dpp);
  if (is_external(params.potential)) {
    const DeltaVTable dv = build_delta_v_external(params.potential, grid_, params.epsilon, 0.0);
    nonlocal_factor_half_ = nonlocal_factor_table(dv, half);
  }
  if (params.gamma > 0.0) {
    if (variant_ == FrictionVariant::Collocation)
      friction_ = build_friction_propagator(*grid_, params.gamma, dt);
    else
      galerkin_prop_ = galerkin_friction_propagator(build_galerkin_friction_matrices(*grid_),
                                                    params.gamma, dt);
  }
}

void StrangCaches::apply_convection_half(WignerField& w) {
  step_convection_cached(w, conv_phase_half_, fft_);
}

void StrangCaches::apply_diffusion_half(WignerField& w) {
  step_diffusion_cached(w, diff_factor_half_, fft_);
}

void StrangCaches::apply_nonlocal_half(WignerField& w) {
  if (is_external(params_.potential)) {
    step_nonlocal_cached(w, nonlocal_factor_half_, fft_);
    return;
  }
  // WPFP: density -> Poisson -> deltaV from the field entering this
  // stage, frozen over the half substep.
  const PotentialField vhat = solve_poisson(density(w), params_.potential.alpha, *grid_);
  const DeltaVTable dv = build_delta_v_selfconsistent(vhat, grid_, params_.epsilon);
  step_nonlocal_cached(w, nonlocal_factor_table(dv, 0.5 * dt_), fft_);
}

void StrangCaches::apply_friction_full(WignerField& w) {
  if (params_.gamma == 0.0) return;  // exp(0) = identity
  if (variant_ == FrictionVariant::Collocation)
    step_friction_collocation_inplace(w, friction_);
  else
    step_friction_galerkin_inplace(w, galerkin_prop_, fft_);
}

void strang_step(WignerField& w, double dt, const PhysicalParams& /*params*/,
                 StrangCaches& caches) {
  if (dt != caches.dt())
    throw config_error("strang_step: caches were built for a different dt");
  caches.apply_convection_half(w);
  caches.apply_nonlocal_half(w);
  caches.apply_diffusion_half(w);
  caches.apply_friction_full(w);
  caches.apply_diffusion_half(w);
  caches.apply_nonlocal_half(w);
  caches.apply_convection_half(w);
  w.time += dt;
}

namespace {

std::vector<double> potential_samples_for(const WignerField& w, const PhysicalParams& params) {
  const GridSpec& g = *w.grid;
  if (is_external(params.potential)) {
    std::vector<double> v(g.M);
    for (int m = 0; m < g.M; ++m) v[m] = eval_potential(params.potential, g.x[m], w.time);
    return v;
  }
  return potential_samples(solve_poisson(density(w), params.potential.alpha, g), g);
}

ObservableRecord make_record(const WignerField& w, const PhysicalParams& params,
                             const WignerField* prev, double dt_between, bool store_local) {
  const double alpha_tilde = is_external(params.potential) ? 1.0 : 0.5;
  const std::vector<double> v = potential_samples_for(w, params);
  const GlobalMoments gm = global_moments(w, v, alpha_tilde);
  ObservableRecord rec;
  rec.t = w.time;
  rec.n = gm.n;
  rec.j = gm.j;
  rec.e = gm.e;
  rec.residual = prev ? steady_state_residual(*prev, w, dt_between)
                      : std::numeric_limits<double>::quiet_NaN();
  if (store_local) rec.local = local_moments(w, v, alpha_tilde);
  return rec;
}

} // namespace

SimulationResult run_simulation(const RunConfig& config, const SimulationSinks& sinks) {
  if (!config.grid) throw config_error("run_simulation: no grid");
  if (!(config.dt > 0.0)) throw config_error("run_simulation: dt must be positive");
  if (config.t_final < 0.0) throw config_error("run_simulation: T must be >= 0");
  if (config.observable_cadence < 1)
    throw config_error("run_simulation: observable cadence must be >= 1");
  validate_params(config.params);

  const long steps = std::lround(config.t_final / config.dt);
  if (std::fabs(steps * config.dt - config.t_final) > 1e-9 * std::max(config.t_final, 1.0))
    throw config_error("run_simulation: T is not an integer multiple of dt");

  SimulationResult result;
  result.field = gaussian_wavepacket(normalize_gaussian_ic(config.ic), config.params.epsilon,
                                     config.grid);
  if (config.renormalize) {
    const double mass = total_mass(result.field);
    if (mass == 0.0) throw numeric_error("run_simulation: initial field has zero mass");
    for (double& v : result.field.values) v /= mass;
  }

  StrangCaches caches(config.grid, config.params, config.dt, config.friction);

  WignerField prev_recorded = result.field;
  auto record = [&](const WignerField& w, bool first) {
    ObservableRecord rec = make_record(w, config.params, first ? nullptr : &prev_recorded,
                                       (w.time - prev_recorded.time), config.store_local_moments);
    result.series.append(rec);
    if (sinks.observable) sinks.observable(rec);
    if (sinks.snapshot) sinks.snapshot(w);
    prev_recorded = w;
  };
  record(result.field, true);

  for (long n = 0; n < steps; ++n) {
    try {
      strang_step(result.field, config.dt, config.params, caches);
    } catch (const numeric_error& e) {
      throw numeric_error("run_simulation: aborted at step " + std::to_string(n + 1) + " (t=" +
                          std::to_string(result.field.time) + "): " + e.what());
    }
    // keep recorded timestamps exact multiples of dt
    result.field.time = (n + 1) * config.dt;
    if ((n + 1) % config.observable_cadence == 0 || n + 1 == steps)
      record(result.field, false);
  }
  return result;
}

} // namespace wpfp
