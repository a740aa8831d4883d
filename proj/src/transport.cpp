#include "wpfp/transport.hpp"

#include <cmath>

#include "wpfp/errors.hpp"
#include "wpfp/parallel.hpp"

namespace wpfp {

DeltaVTable::DeltaVTable(std::shared_ptr<const GridSpec> g)
    : grid(std::move(g)), entries(static_cast<std::size_t>(grid->M) * grid->N) {}

DeltaVTable build_delta_v_external(const PotentialSpec& potential,
                                   std::shared_ptr<const GridSpec> grid, double epsilon,
                                   double t) {
  if (!is_external(potential))
    throw config_error("build_delta_v_external: potential is self-consistent; "
                       "use the Poisson pipeline");
  if (!(epsilon > 0.0)) throw config_error("build_delta_v_external: epsilon must be positive");

  DeltaVTable dv(std::move(grid));
  const GridSpec& g = *dv.grid;
  dv.time_tag = t;
  parallel_for(static_cast<std::size_t>(g.M), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t m = lo; m < hi; ++m) {
      auto* row = &dv.entries[m * g.N];
      const double x = g.x[m];
      row[0] = 0.0;
      for (int k = 1; k < g.N; ++k) {
        const double y = 0.5 * epsilon * g.nu[k];
        const double diff = eval_potential(potential, x + y, t) - eval_potential(potential, x - y, t);
        row[k] = std::complex<double>(0.0, diff / epsilon);
      }
    }
  });
  return dv;
}

namespace {

void check_same_grid(const WignerField& w, const GridSpec& g, const char* who) {
  if (!w.grid || !same_grid(*w.grid, g))
    throw config_error(std::string(who) + ": field grid does not match");
}

} // namespace

std::vector<std::complex<double>> convection_phase_table(const GridSpec& g, double tau) {
  std::vector<std::complex<double>> table(static_cast<std::size_t>(g.M) * g.N);
  for (int j = 0; j < g.M; ++j)
    for (int l = 0; l < g.N; ++l)
      table[static_cast<std::size_t>(j) * g.N + l] =
          std::polar(1.0, -g.mu[j] * g.xi[l] * tau);
  return table;
}

std::vector<double> diffusion_factor_table(const GridSpec& g, double tau, double dqq, double dpq,
                                           double dpp) {
  std::vector<double> table(static_cast<std::size_t>(g.M) * g.N);
  for (int j = 0; j < g.M; ++j)
    for (int k = 0; k < g.N; ++k)
      table[static_cast<std::size_t>(j) * g.N + k] =
          std::exp((-dqq * g.mu[j] * g.mu[j] - 2.0 * dpq * g.mu[j] * g.nu[k] -
                    dpp * g.nu[k] * g.nu[k]) *
                   tau);
  return table;
}

std::vector<std::complex<double>> nonlocal_factor_table(const DeltaVTable& dv, double tau) {
  std::vector<std::complex<double>> table(dv.entries.size());
  parallel_for(dv.entries.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) table[i] = std::exp(dv.entries[i] * tau);
  });
  return table;
}

void step_convection_cached(WignerField& w, const std::vector<std::complex<double>>& phases,
                            Spectral& fft) {
  check_same_grid(w, fft.grid(), "step_convection");
  if (phases.size() != w.values.size())
    throw config_error("step_convection: phase table shape does not match the field");
  fft.load(w);
  fft.forward_x();
  auto* buf = fft.buffer();
  parallel_for(phases.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) buf[i] *= phases[i];
  });
  fft.backward_x();
  fft.store(w, static_cast<double>(fft.grid().M));
}

void step_diffusion_cached(WignerField& w, const std::vector<double>& factors, Spectral& fft) {
  check_same_grid(w, fft.grid(), "step_diffusion");
  if (factors.size() != w.values.size())
    throw config_error("step_diffusion: factor table shape does not match the field");
  fft.load(w);
  fft.forward_2d();
  auto* buf = fft.buffer();
  parallel_for(factors.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) buf[i] *= factors[i];
  });
  fft.backward_2d();
  fft.store(w, static_cast<double>(fft.grid().M) * fft.grid().N);
}

void step_nonlocal_cached(WignerField& w, const std::vector<std::complex<double>>& factors,
                          Spectral& fft) {
  check_same_grid(w, fft.grid(), "step_nonlocal");
  if (factors.size() != w.values.size())
    throw config_error("step_nonlocal: deltaV table shape does not match the field");
  fft.load(w);
  fft.forward_xi();
  auto* buf = fft.buffer();
  parallel_for(factors.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) buf[i] *= factors[i];
  });
  fft.backward_xi();
  fft.store(w, static_cast<double>(fft.grid().N));
}

void step_convection_inplace(WignerField& w, double tau, Spectral& fft) {
  step_convection_cached(w, convection_phase_table(fft.grid(), tau), fft);
}

void step_nonlocal_inplace(WignerField& w, double tau, const DeltaVTable& dv, Spectral& fft) {
  if (!dv.grid || !same_grid(*dv.grid, fft.grid()))
    throw config_error("step_nonlocal: deltaV table grid does not match");
  step_nonlocal_cached(w, nonlocal_factor_table(dv, tau), fft);
}

void step_diffusion_inplace(WignerField& w, double tau, double dqq, double dpq, double dpp,
                            Spectral& fft) {
  step_diffusion_cached(w, diffusion_factor_table(fft.grid(), tau, dqq, dpq, dpp), fft);
}

WignerField step_convection(const WignerField& w, double tau) {
  Spectral fft(*w.grid);
  WignerField out = w;
  step_convection_inplace(out, tau, fft);
  return out;
}

WignerField step_nonlocal(const WignerField& w, double tau, const DeltaVTable& dv) {
  Spectral fft(*w.grid);
  WignerField out = w;
  step_nonlocal_inplace(out, tau, dv, fft);
  return out;
}

WignerField step_diffusion(const WignerField& w, double tau, double dqq, double dpq, double dpp) {
  Spectral fft(*w.grid);
  WignerField out = w;
  step_diffusion_inplace(out, tau, dqq, dpq, dpp, fft);
  return out;
}

} // namespace wpfp
