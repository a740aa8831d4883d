#include "wpfp/poisson.hpp"

#include <fftw3.h>

#include <cmath>

#include "wpfp/errors.hpp"

namespace wpfp {

std::vector<double> density(const WignerField& w) {
  const GridSpec& g = *w.grid;
  std::vector<double> rho(g.M);
  for (int m = 0; m < g.M; ++m) {
    const double* row = &w.values[static_cast<std::size_t>(m) * g.N];
    double s = 0.0;
    for (int l = 0; l < g.N; ++l) s += row[l];
    rho[m] = g.hxi * s;
  }
  return rho;
}

PotentialField solve_poisson(const std::vector<double>& rho, int alpha, const GridSpec& grid,
                             double* removed_mean) {
  if (static_cast<int>(rho.size()) != grid.M)
    throw config_error("solve_poisson: density length does not match the grid");
  if (alpha != 1 && alpha != -1) throw config_error("solve_poisson: alpha must be +1 or -1");

  double mean = 0.0;
  for (double v : rho) mean += v;
  mean /= grid.M;
  if (removed_mean) *removed_mean = mean;

  std::vector<std::complex<double>> work(grid.M);
  for (int m = 0; m < grid.M; ++m) work[m] = rho[m] - mean;
  fftw_plan plan = fftw_plan_dft_1d(grid.M, reinterpret_cast<fftw_complex*>(work.data()),
                                    reinterpret_cast<fftw_complex*>(work.data()), FFTW_FORWARD,
                                    FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  PotentialField out;
  out.vhat.assign(grid.M, 0.0);
  for (int j = 1; j < grid.M; ++j) {
    const double rhohat_scale = 1.0 / grid.M;  // DFT -> series coefficient
    out.vhat[j] = -static_cast<double>(alpha) * work[j] * rhohat_scale / (grid.mu[j] * grid.mu[j]);
  }
  return out;
}

std::vector<double> potential_samples(const PotentialField& v, const GridSpec& grid) {
  if (static_cast<int>(v.vhat.size()) != grid.M)
    throw config_error("potential_samples: coefficient length does not match the grid");
  std::vector<std::complex<double>> work(v.vhat);
  fftw_plan plan = fftw_plan_dft_1d(grid.M, reinterpret_cast<fftw_complex*>(work.data()),
                                    reinterpret_cast<fftw_complex*>(work.data()), FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  std::vector<double> samples(grid.M);
  for (int m = 0; m < grid.M; ++m) samples[m] = work[m].real();
  return samples;
}

DeltaVTable build_delta_v_selfconsistent(const PotentialField& v,
                                         std::shared_ptr<const GridSpec> grid, double epsilon) {
  if (!(epsilon > 0.0))
    throw config_error("build_delta_v_selfconsistent: epsilon must be positive");
  const GridSpec& g = *grid;
  if (static_cast<int>(v.vhat.size()) != g.M)
    throw config_error("build_delta_v_selfconsistent: coefficient length does not match");

  DeltaVTable dv(grid);
  dv.time_tag = v.time_tag;

  std::vector<std::complex<double>> col(g.M);
  fftw_plan plan = fftw_plan_dft_1d(g.M, reinterpret_cast<fftw_complex*>(col.data()),
                                    reinterpret_cast<fftw_complex*>(col.data()), FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
  const std::complex<double> i_over_eps(0.0, 1.0 / epsilon);
  for (int k = 1; k < g.N; ++k) {
    for (int j = 0; j < g.M; ++j) {
      const double s = 2.0 * std::sin(0.5 * epsilon * g.mu[j] * g.nu[k]);
      col[j] = v.vhat[j] * std::complex<double>(0.0, s);
    }
    fftw_execute(plan);  // col[m] = sum_j ... e^{i mu_j (x_m - a)}
    for (int m = 0; m < g.M; ++m) dv(m, k) = i_over_eps * col[m];
  }
  fftw_destroy_plan(plan);
  for (int m = 0; m < g.M; ++m) dv(m, 0) = 0.0;
  return dv;
}

} // namespace wpfp
