#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wpfp/friction.hpp"
#include "wpfp/grid.hpp"
#include "wpfp/observables.hpp"
#include "wpfp/potential.hpp"
#include "wpfp/spectral.hpp"
#include "wpfp/transport.hpp"

namespace wpfp {

struct PhysicalParams {
  double epsilon = 0.1;
  double dpp = 0, dqq = 0, dpq = 0;
  double gamma = 0;
  PotentialSpec potential;
  // The diffusion matrix [[Dqq, Dpq], [Dpq, Dpp]] is required positive
  // semidefinite unless explicitly overridden; otherwise some spectral
  // diffusion factors exceed 1 and the scheme amplifies those modes.
  bool allow_indefinite_diffusion = false;
};

// Throws config_error on invalid parameters; returns a human-readable
// warning ("" if none) for conditions that are tolerated when overridden.
std::string validate_params(const PhysicalParams& p);

enum class FrictionVariant { Collocation, Galerkin };

// One stage of the palindromic schedule.
struct SplitStage {
  enum Op { Convection, Nonlocal, Diffusion, Friction } op;
  double fraction;  // of dt
};

// [(L1,1/2), (L2,1/2), (L3,1/2), (L4,1), (L3,1/2), (L2,1/2), (L1,1/2)]
const std::vector<SplitStage>& strang_schedule();

struct RunConfig {
  std::shared_ptr<const GridSpec> grid;
  PhysicalParams params;
  GaussianIC ic;
  double dt = 0;
  double t_final = 0;
  int observable_cadence = 1;  // steps between observable records
  FrictionVariant friction = FrictionVariant::Collocation;
  bool renormalize = false;    // divide the initial field by its discrete mass
  bool store_local_moments = false;
};

// Per-(grid, params, dt) working state reused across steps: FFT plans,
// the full-dt friction propagator, half-dt factor tables, and (for an
// external potential) the static deltaV exponential.
class StrangCaches {
public:
  StrangCaches(std::shared_ptr<const GridSpec> grid, const PhysicalParams& params, double dt,
               FrictionVariant variant = FrictionVariant::Collocation);

  Spectral& fft() { return fft_; }
  const PhysicalParams& params() const { return params_; }
  double dt() const { return dt_; }
  FrictionVariant variant() const { return variant_; }

  void apply_convection_half(WignerField& w);
  void apply_nonlocal_half(WignerField& w);
  void apply_diffusion_half(WignerField& w);
  void apply_friction_full(WignerField& w);

private:
  std::shared_ptr<const GridSpec> grid_;
  PhysicalParams params_;
  double dt_;
  FrictionVariant variant_;
  Spectral fft_;
  std::vector<std::complex<double>> conv_phase_half_;
  std::vector<double> diff_factor_half_;
  std::vector<std::complex<double>> nonlocal_factor_half_;  // external potential only
  FrictionPropagator friction_;
  DenseMatrixZ galerkin_prop_;
};

// Advances the field by one 7-stage Strang step of length dt. For a
// self-consistent potential deltaV is rebuilt from the current field at
// the entry of each nonlocal stage.
void strang_step(WignerField& w, double dt, const PhysicalParams& params, StrangCaches& caches);

struct SimulationSinks {
  std::function<void(const WignerField&)> snapshot;          // called per observable record
  std::function<void(const ObservableRecord&)> observable;
};

struct SimulationResult {
  WignerField field;
  ObservableSeries series;
};

// Runs round(T/dt) Strang steps (|P*dt - T| <= 1e-9*T enforced),
// recording observables at the configured cadence. Aborts with
// numeric_error (annotated with the step index) if the field goes
// non-finite.
SimulationResult run_simulation(const RunConfig& config, const SimulationSinks& sinks = {});

} // namespace wpfp
