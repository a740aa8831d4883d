#pragma once

#include <complex>
#include <vector>

#include "wpfp/grid.hpp"
#include "wpfp/transport.hpp"

namespace wpfp {

// Fourier coefficients of the self-consistent potential in the
// convention V(x) = sum_j vhat[j] e^{i mu_j (x-a)} (DFT index order).
// vhat[0] = 0 by construction.
struct PotentialField {
  std::vector<std::complex<double>> vhat;
  double time_tag = 0.0;
};

// Rectangle-rule particle density rho[m] = hxi * sum_l W(m,l).
std::vector<double> density(const WignerField& w);

// Spectral solve of d2V/dx2 = alpha * (rho - mean(rho)) with periodic
// boundary conditions. The mean is removed so the j=0 equation is
// consistent; the subtracted value is reported through *removed_mean.
PotentialField solve_poisson(const std::vector<double>& rho, int alpha, const GridSpec& grid,
                             double* removed_mean = nullptr);

// Reconstructs V at the grid nodes from its Fourier coefficients.
std::vector<double> potential_samples(const PotentialField& v, const GridSpec& grid);

// deltaV table from the solved coefficients:
// entry (m,k) = (i/eps) sum_j vhat[j] e^{i mu_j (x_m-a)} * 2i sin(eps*mu_j*nu_k/2).
DeltaVTable build_delta_v_selfconsistent(const PotentialField& v,
                                         std::shared_ptr<const GridSpec> grid, double epsilon);

} // namespace wpfp
