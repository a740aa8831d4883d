#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "wpfp/grid.hpp"
#include "wpfp/potential.hpp"
#include "wpfp/spectral.hpp"

namespace wpfp {

// Samples of the scaled antisymmetric potential difference at the
// momentum-mode arguments: entry (m,k) = deltaV(x_m, eps*nu_k/2, t),
// stored x-major like the field (row m contiguous over k). Column k=0 is
// identically zero; entries are purely imaginary for a real potential.
struct DeltaVTable {
  std::shared_ptr<const GridSpec> grid;
  std::vector<std::complex<double>> entries;  // M*N, (m,k) at m*N + k
  double time_tag = 0.0;

  DeltaVTable() = default;
  explicit DeltaVTable(std::shared_ptr<const GridSpec> g);

  std::complex<double>& operator()(int m, int k) {
    return entries[static_cast<std::size_t>(m) * grid->N + k];
  }
  std::complex<double> operator()(int m, int k) const {
    return entries[static_cast<std::size_t>(m) * grid->N + k];
  }
};

// deltaV from the closed-form expression of an external potential,
// evaluated analytically at the shifted points x_m +- eps*nu_k/2.
DeltaVTable build_delta_v_external(const PotentialSpec& potential, std::shared_ptr<const GridSpec> grid,
                                   double epsilon, double t = 0.0);

// Position transport: each x-Fourier coefficient picks up the phase
// exp(-i*mu_j*xi_l*tau); the result interpolates W0(x - xi*tau, xi).
void step_convection_inplace(WignerField& w, double tau, Spectral& fft);
WignerField step_convection(const WignerField& w, double tau);

// Nonlocal potential action: each xi-Fourier coefficient is multiplied by
// exp(deltaV(x, eps*nu_k/2) * tau). The k=0 coefficient is untouched, so
// the xi-marginal is preserved pointwise in x.
void step_nonlocal_inplace(WignerField& w, double tau, const DeltaVTable& dv, Spectral& fft);
WignerField step_nonlocal(const WignerField& w, double tau, const DeltaVTable& dv);

// Phase-space diffusion: 2D Fourier coefficient (j,k) decays by
// exp((-Dqq*mu^2 - 2*Dpq*mu*nu - Dpp*nu^2) * tau).
void step_diffusion_inplace(WignerField& w, double tau, double dqq, double dpq, double dpp,
                            Spectral& fft);
WignerField step_diffusion(const WignerField& w, double tau, double dqq, double dpq, double dpp);

// Precomputed per-mode factor tables for a fixed substep length.
std::vector<std::complex<double>> convection_phase_table(const GridSpec& g, double tau);
std::vector<double> diffusion_factor_table(const GridSpec& g, double tau, double dqq, double dpq,
                                           double dpp);
std::vector<std::complex<double>> nonlocal_factor_table(const DeltaVTable& dv, double tau);

void step_convection_cached(WignerField& w, const std::vector<std::complex<double>>& phases,
                            Spectral& fft);
void step_diffusion_cached(WignerField& w, const std::vector<double>& factors, Spectral& fft);
void step_nonlocal_cached(WignerField& w, const std::vector<std::complex<double>>& factors,
                          Spectral& fft);

} // namespace wpfp
