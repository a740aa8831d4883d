#include "wpfp/moment_oracle.hpp"

#include <cmath>
#include <numbers>

#include "wpfp/dense.hpp"
#include "wpfp/errors.hpp"
#include "wpfp/splitting.hpp"

namespace wpfp {

MomentState initial_moments(const GaussianIC& ic, double epsilon) {
  const double det = ic.a11 * ic.a22 - ic.a12 * ic.a12;
  if (!(ic.a11 > 0.0) || !(det > 0.0))
    throw config_error("initial_moments: quadratic form is not positive definite");
  MomentState ms;
  ms.mean_x = ic.x0;
  ms.mean_xi = ic.xi0;
  const double f = 0.5 * epsilon / det;
  ms.cov_xx = f * ic.a22;
  ms.cov_xixi = f * ic.a11;
  ms.cov_xxi = -f * ic.a12;
  ms.t = 0.0;
  return ms;
}

MomentState harmonic_moment_evolution(const GaussianIC& ic, const PhysicalParams& params,
                                      double c2, double c1, double T) {
  const MomentState ms0 = initial_moments(ic, params.epsilon);
  const double gamma = params.gamma;

  // mean: augmented 3x3 exponential for dm/dt = A m + b
  DenseMatrix aug(3);
  aug(0, 1) = T;
  aug(1, 0) = -c2 * T;
  aug(1, 1) = -2.0 * gamma * T;
  aug(1, 2) = -c1 * T;
  const DenseMatrix em = matrix_exp(aug);
  MomentState ms;
  ms.t = ms0.t + T;
  ms.mean_x = em(0, 0) * ms0.mean_x + em(0, 1) * ms0.mean_xi + em(0, 2);
  ms.mean_xi = em(1, 0) * ms0.mean_x + em(1, 1) * ms0.mean_xi + em(1, 2);

  // covariance: Van Loan block form for the Lyapunov flow,
  // exp(T*[[A, 2D], [0, -A^T]]) = [[F11, F12], [0, F22]] gives
  // Sigma(T) = F11 Sigma0 F11^T + F12 F11^T.
  DenseMatrix blk(4);
  blk(0, 1) = T;
  blk(1, 0) = -c2 * T;
  blk(1, 1) = -2.0 * gamma * T;
  blk(0, 2) = 2.0 * params.dqq * T;
  blk(0, 3) = 2.0 * params.dpq * T;
  blk(1, 2) = 2.0 * params.dpq * T;
  blk(1, 3) = 2.0 * params.dpp * T;
  blk(2, 3) = c2 * T;       // -A^T
  blk(3, 2) = -T;
  blk(3, 3) = 2.0 * gamma * T;
  const DenseMatrix eb = matrix_exp(blk);

  const double f11[2][2] = {{eb(0, 0), eb(0, 1)}, {eb(1, 0), eb(1, 1)}};
  const double f12[2][2] = {{eb(0, 2), eb(0, 3)}, {eb(1, 2), eb(1, 3)}};
  const double s0[2][2] = {{ms0.cov_xx, ms0.cov_xxi}, {ms0.cov_xxi, ms0.cov_xixi}};

  double fs[2][2] = {};  // F11 * Sigma0
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) fs[i][j] += f11[i][k] * s0[k][j];
  double sig[2][2] = {};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) sig[i][j] += (fs[i][k] + f12[i][k]) * f11[j][k];

  ms.cov_xx = sig[0][0];
  ms.cov_xixi = sig[1][1];
  ms.cov_xxi = 0.5 * (sig[0][1] + sig[1][0]);  // symmetrize rounding
  if (!(ms.cov_xx > 0.0) || !(ms.cov_xx * ms.cov_xixi - ms.cov_xxi * ms.cov_xxi > 0.0))
    throw numeric_error("harmonic_moment_evolution: covariance lost positive definiteness");
  return ms;
}

MomentState harmonic_moment_evolution(const GaussianIC& ic, const PhysicalParams& params,
                                      double T) {
  double c2 = 0, c1 = 0;
  if (!quadratic_coefficients(params.potential, c2, c1))
    throw config_error("harmonic_moment_evolution: potential is not quadratic; "
                       "no analytic reference available");
  return harmonic_moment_evolution(ic, params, c2, c1, T);
}

WignerField gaussian_from_moments(const MomentState& ms, std::shared_ptr<const GridSpec> grid) {
  const double det = ms.cov_xx * ms.cov_xixi - ms.cov_xxi * ms.cov_xxi;
  if (!(ms.cov_xx > 0.0) || !(det > 0.0))
    throw config_error("gaussian_from_moments: covariance is not positive definite");

  WignerField w(std::move(grid));
  const GridSpec& g = *w.grid;
  const double amp = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
  const double ixx = ms.cov_xixi / det;   // inverse covariance entries
  const double ixixi = ms.cov_xx / det;
  const double ixxi = -ms.cov_xxi / det;
  for (int m = 0; m < g.M; ++m) {
    const double dx = g.x[m] - ms.mean_x;
    double* row = &w.values[static_cast<std::size_t>(m) * g.N];
    for (int l = 0; l < g.N; ++l) {
      const double dxi = g.xi[l] - ms.mean_xi;
      const double q = ixx * dx * dx + 2.0 * ixxi * dx * dxi + ixixi * dxi * dxi;
      row[l] = amp * std::exp(-0.5 * q);
    }
  }
  w.time = ms.t;
  return w;
}

} // namespace wpfp
