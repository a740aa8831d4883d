#pragma once

#include <complex>
#include <memory>

#include "wpfp/dense.hpp"
#include "wpfp/grid.hpp"
#include "wpfp/spectral.hpp"

namespace wpfp {

// Periodic spectral differentiation matrix on the momentum nodes,
// d[k][j] = (-1)^{k+j} (pi/(d-c)) cot(pi (k-j)/N), zero diagonal.
struct FrictionDiffMatrix {
  DenseMatrix d;
  double c = 0, dom_d = 0;
  int n = 0;
};

FrictionDiffMatrix build_friction_diffmatrix(const GridSpec& grid);

// Dense propagator exp(2*gamma*(I + Lambda*D)*dt) for the drift
// subproblem dW/dt = 2*gamma*d(xi W)/dxi, cached by its tags.
struct FrictionPropagator {
  DenseMatrix p;
  double gamma = 0, dt = 0;
  double c = 0, dom_d = 0;
  int n = 0;

  bool fits(const GridSpec& g) const { return n == g.N && c == g.c && dom_d == g.d; }
  bool matches(double gamma_, double dt_, const GridSpec& g) const {
    return gamma == gamma_ && dt == dt_ && fits(g);
  }
};

FrictionPropagator build_friction_propagator(const GridSpec& grid, double gamma, double dt);

// Applies the propagator to every x-column of the field (one dense
// matrix-matrix product).
void step_friction_collocation_inplace(WignerField& w, const FrictionPropagator& prop);
WignerField step_friction_collocation(const WignerField& w, const FrictionPropagator& prop);

// Mode-space operator matrices of the Galerkin variant, rows/columns in
// DFT index order. e is the diagonal i*pi*(d+c)/(d-c)*k (mode number k);
// f[k][l] = l/(l-k) off the diagonal.
struct GalerkinFrictionMatrices {
  std::vector<std::complex<double>> e;
  DenseMatrix f;
  double c = 0, dom_d = 0;
  int n = 0;
};

GalerkinFrictionMatrices build_galerkin_friction_matrices(const GridSpec& grid);

// exp(2*gamma*(I + E + F)*dt) acting on xi-Fourier coefficient columns.
DenseMatrixZ galerkin_friction_propagator(const GalerkinFrictionMatrices& mats, double gamma,
                                          double dt);

void step_friction_galerkin_inplace(WignerField& w, const DenseMatrixZ& prop, Spectral& fft);
WignerField step_friction_galerkin(const WignerField& w, const GalerkinFrictionMatrices& mats,
                                   double gamma, double dt);

} // namespace wpfp
