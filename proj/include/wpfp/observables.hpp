#pragma once

#include <optional>
#include <vector>

#include "wpfp/grid.hpp"

namespace wpfp {

struct LocalMoments {
  std::vector<double> rho;  // particle density
  std::vector<double> j;    // current density
  std::vector<double> e;    // energy density
};

struct GlobalMoments {
  double n = 0, j = 0, e = 0;
};

// Rectangle-rule xi-moments per position node. alpha_tilde weights the
// potential part of the energy density: 1 for an external potential,
// 1/2 for a self-consistent one.
LocalMoments local_moments(const WignerField& w, const std::vector<double>& v_samples,
                           double alpha_tilde);

GlobalMoments global_moments(const WignerField& w, const std::vector<double>& v_samples,
                             double alpha_tilde);

// ||W_next - W_prev||_inf / (dt * ||W_next||_inf); scale-invariant rate
// of change used to detect steady states.
double steady_state_residual(const WignerField& w_prev, const WignerField& w_next, double dt);

struct ObservableRecord {
  double t = 0;
  double n = 0, j = 0, e = 0;
  // residual vs the previously recorded field; NaN on the first record
  double residual = 0;
  std::optional<LocalMoments> local;
};

struct ObservableSeries {
  std::vector<ObservableRecord> records;
  double n0 = 0, j0 = 0, e0 = 0;  // initial values, for normalized reporting

  void append(ObservableRecord rec);
};

} // namespace wpfp
