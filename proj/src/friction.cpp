#include "wpfp/friction.hpp"

#include <cmath>
#include <numbers>

#include "wpfp/errors.hpp"
#include "wpfp/parallel.hpp"

namespace wpfp {

FrictionDiffMatrix build_friction_diffmatrix(const GridSpec& grid) {
  const int n = grid.N;
  FrictionDiffMatrix out;
  out.d = DenseMatrix(n);
  out.c = grid.c;
  out.dom_d = grid.d;
  out.n = n;
  const double pref = std::numbers::pi / (grid.d - grid.c);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      if (k == j) continue;
      const double sign = ((k + j) % 2 == 0) ? 1.0 : -1.0;
      out.d(k, j) = sign * pref / std::tan(std::numbers::pi * (k - j) / n);
    }
  return out;
}

FrictionPropagator build_friction_propagator(const GridSpec& grid, double gamma, double dt) {
  if (gamma < 0.0) throw config_error("build_friction_propagator: gamma must be >= 0");
  if (!(dt > 0.0)) throw config_error("build_friction_propagator: dt must be positive");

  FrictionPropagator prop;
  prop.gamma = gamma;
  prop.dt = dt;
  prop.c = grid.c;
  prop.dom_d = grid.d;
  prop.n = grid.N;
  if (gamma == 0.0) {
    prop.p = DenseMatrix::identity(grid.N);  // exp(0) exactly
    return prop;
  }
  const FrictionDiffMatrix dm = build_friction_diffmatrix(grid);
  DenseMatrix a(grid.N);
  for (int k = 0; k < grid.N; ++k) {
    for (int j = 0; j < grid.N; ++j) a(k, j) = 2.0 * gamma * dt * grid.xi[k] * dm.d(k, j);
    a(k, k) += 2.0 * gamma * dt;
  }
  prop.p = matrix_exp(a);
  return prop;
}

namespace {

// out(m,k) = sum_j field(m,j) * p(k,j): rows of the field and rows of p
// are both contiguous.
template <class T>
void apply_to_columns(std::vector<T>& values, const Dense<T>& p, int m_count) {
  const int n = p.n;
  std::vector<T> result(values.size());
  parallel_for(static_cast<std::size_t>(m_count), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t m = lo; m < hi; ++m) {
      const T* in = &values[m * n];
      T* out = &result[m * n];
      for (int k = 0; k < n; ++k) {
        const T* prow = &p.entries[static_cast<std::size_t>(k) * n];
        T acc{};
        for (int j = 0; j < n; ++j) acc += prow[j] * in[j];
        out[k] = acc;
      }
    }
  });
  values.swap(result);
}

} // namespace

void step_friction_collocation_inplace(WignerField& w, const FrictionPropagator& prop) {
  if (!w.grid || !prop.fits(*w.grid))
    throw config_error("step_friction_collocation: propagator grid does not match the field");
  apply_to_columns(w.values, prop.p, w.grid->M);
}

WignerField step_friction_collocation(const WignerField& w, const FrictionPropagator& prop) {
  WignerField out = w;
  step_friction_collocation_inplace(out, prop);
  return out;
}

GalerkinFrictionMatrices build_galerkin_friction_matrices(const GridSpec& grid) {
  const int n = grid.N;
  GalerkinFrictionMatrices out;
  out.c = grid.c;
  out.dom_d = grid.d;
  out.n = n;
  out.e.resize(n);
  out.f = DenseMatrix(n);
  const double ratio = std::numbers::pi * (grid.d + grid.c) / (grid.d - grid.c);
  auto mode = [n](int idx) { return (idx < n / 2) ? idx : idx - n; };
  for (int k = 0; k < n; ++k) out.e[k] = std::complex<double>(0.0, ratio * mode(k));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      if (l == k) continue;
      const double lm = mode(l), km = mode(k);
      out.f(k, l) = lm / (lm - km);
    }
  return out;
}

DenseMatrixZ galerkin_friction_propagator(const GalerkinFrictionMatrices& mats, double gamma,
                                          double dt) {
  if (gamma < 0.0) throw config_error("galerkin_friction_propagator: gamma must be >= 0");
  if (!(dt > 0.0)) throw config_error("galerkin_friction_propagator: dt must be positive");
  const int n = mats.n;
  if (gamma == 0.0) return DenseMatrixZ::identity(n);
  DenseMatrixZ gen(n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) gen(k, l) = 2.0 * gamma * dt * mats.f(k, l);
    gen(k, k) += 2.0 * gamma * dt * (1.0 + mats.e[k]);
  }
  return matrix_exp(gen);
}

void step_friction_galerkin_inplace(WignerField& w, const DenseMatrixZ& prop, Spectral& fft) {
  const GridSpec& g = fft.grid();
  if (!w.grid || !same_grid(*w.grid, g))
    throw config_error("step_friction_galerkin: field grid does not match");
  if (prop.n != g.N) throw config_error("step_friction_galerkin: propagator size mismatch");
  fft.load(w);
  fft.forward_xi();
  std::vector<std::complex<double>> coeffs(fft.buffer(), fft.buffer() + fft.size());
  apply_to_columns(coeffs, prop, g.M);
  std::copy(coeffs.begin(), coeffs.end(), fft.buffer());
  fft.backward_xi();
  fft.store(w, static_cast<double>(g.N));
}

WignerField step_friction_galerkin(const WignerField& w, const GalerkinFrictionMatrices& mats,
                                   double gamma, double dt) {
  if (mats.n != w.grid->N || mats.c != w.grid->c || mats.dom_d != w.grid->d)
    throw config_error("step_friction_galerkin: matrices built for a different grid");
  Spectral fft(*w.grid);
  WignerField out = w;
  step_friction_galerkin_inplace(out, galerkin_friction_propagator(mats, gamma, dt), fft);
  return out;
}

} // namespace wpfp
