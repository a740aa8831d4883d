#pragma once

#include <memory>
#include <ostream>
#include <utility>
#include <vector>

namespace wpfp {

// Truncated periodic phase-space box [a,b] x [c,d] with an M x N uniform
// partition. Frequency tables are stored in DFT index order, so mu[j] for
// j = 0..M-1 carries the signed mode (j < M/2 ? j : j - M).
struct GridSpec {
  double a = 0, b = 0, c = 0, d = 0;
  int M = 0, N = 0;
  double hx = 0, hxi = 0;
  std::vector<double> x;   // x[m]  = a + m*hx,  m = 0..M-1
  std::vector<double> xi;  // xi[l] = c + l*hxi, l = 0..N-1
  std::vector<double> mu;  // mu[j] = 2*pi*j_signed/(b-a)
  std::vector<double> nu;  // nu[k] = 2*pi*k_signed/(d-c)
};

GridSpec build_grid(double a, double b, double c, double d, int M, int N);

bool same_grid(const GridSpec& g1, const GridSpec& g2);

// Real-valued sample array of W on the grid, x-major: row m (fixed x)
// is contiguous over the N momentum nodes.
struct WignerField {
  std::shared_ptr<const GridSpec> grid;
  std::vector<double> values;  // size M*N, entry (m,l) at m*N + l
  double time = 0.0;
  // max|Im|/max|Re| discarded by the most recent spectral step; a
  // resolved field keeps this below 1e-10.
  double imag_residual = 0.0;

  WignerField() = default;
  explicit WignerField(std::shared_ptr<const GridSpec> g);

  double& operator()(int m, int l) { return values[static_cast<std::size_t>(m) * grid->N + l]; }
  double operator()(int m, int l) const { return values[static_cast<std::size_t>(m) * grid->N + l]; }
};

// Quadratic-form coefficients of the Gaussian wavepacket
//   amp * exp(-[a11 (x-x0)^2 + a22 (xi-xi0)^2 + 2 a12 (x-x0)(xi-xi0)] / eps).
struct GaussianIC {
  double a11 = 1, a22 = 1, a12 = 0;
  double x0 = 0, xi0 = 0;
};

// Maps (a11, a22) through absolute values (sign of a12 kept) and checks
// positive definiteness. Writes a note to *warn if a sign was flipped.
GaussianIC normalize_gaussian_ic(const GaussianIC& ic, std::ostream* warn = nullptr);

WignerField gaussian_wavepacket(const GaussianIC& ic, double epsilon,
                                std::shared_ptr<const GridSpec> grid);

// Rectangle-rule mass hx*hxi*sum W.
double total_mass(const WignerField& w);

// (l2, linf) of W - W_ref; l2 carries the hx*hxi quadrature weight.
std::pair<double, double> error_norms(const WignerField& w, const WignerField& w_ref);

} // namespace wpfp
