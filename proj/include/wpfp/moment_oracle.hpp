#pragma once

#include <memory>

#include "wpfp/grid.hpp"
#include "wpfp/potential.hpp"

namespace wpfp {

struct PhysicalParams;

// Mean and phase-space covariance of a Gaussian field.
struct MomentState {
  double mean_x = 0, mean_xi = 0;
  double cov_xx = 0, cov_xxi = 0, cov_xixi = 0;
  double t = 0;
};

// Moments implied by the Gaussian initial condition: mean (x0, xi0),
// covariance (eps/2) * inverse of [[a11, a12], [a12, a22]].
MomentState initial_moments(const GaussianIC& ic, double epsilon);

// Exact moment flow of the dissipative dynamics with the quadratic
// potential V = 0.5*c2*x^2 + c1*x (for which the nonlocal operator
// coincides with the classical one):
//   dm/dt     = A m + (0, -c1),            A = [[0, 1], [-c2, -2*gamma]]
//   dSigma/dt = A Sigma + Sigma A^T + 2 Diff
// solved in closed form through augmented-matrix exponentials.
MomentState harmonic_moment_evolution(const GaussianIC& ic, const PhysicalParams& params,
                                      double c2, double c1, double T);

// Same, but takes the potential from params and rejects non-quadratic forms.
MomentState harmonic_moment_evolution(const GaussianIC& ic, const PhysicalParams& params,
                                      double T);

// Samples the normalized Gaussian with the given moments on the grid.
WignerField gaussian_from_moments(const MomentState& ms, std::shared_ptr<const GridSpec> grid);

} // namespace wpfp
