#include "wpfp/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wpfp/errors.hpp"

namespace wpfp {

GridSpec build_grid(double a, double b, double c, double d, int M, int N) {
  if (!(b > a) || !(d > c))
    throw config_error("build_grid: domain bounds must satisfy b > a and d > c");
  if (M < 4 || N < 4 || M % 2 != 0 || N % 2 != 0)
    throw config_error("build_grid: M and N must be even and >= 4 (got M=" +
                       std::to_string(M) + ", N=" + std::to_string(N) + ")");

  GridSpec g;
  g.a = a; g.b = b; g.c = c; g.d = d;
  g.M = M; g.N = N;
  g.hx = (b - a) / M;
  g.hxi = (d - c) / N;
  g.x.resize(M);
  g.xi.resize(N);
  g.mu.resize(M);
  g.nu.resize(N);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int m = 0; m < M; ++m) {
    g.x[m] = a + m * g.hx;
    const int j = (m < M / 2) ? m : m - M;
    g.mu[m] = two_pi * j / (b - a);
  }
  for (int l = 0; l < N; ++l) {
    g.xi[l] = c + l * g.hxi;
    const int k = (l < N / 2) ? l : l - N;
    g.nu[l] = two_pi * k / (d - c);
  }
  return g;
}

bool same_grid(const GridSpec& g1, const GridSpec& g2) {
  return g1.M == g2.M && g1.N == g2.N && g1.a == g2.a && g1.b == g2.b &&
         g1.c == g2.c && g1.d == g2.d;
}

WignerField::WignerField(std::shared_ptr<const GridSpec> g)
    : grid(std::move(g)), values(static_cast<std::size_t>(grid->M) * grid->N, 0.0) {}

GaussianIC normalize_gaussian_ic(const GaussianIC& ic, std::ostream* warn) {
  GaussianIC out = ic;
  out.a11 = std::fabs(ic.a11);
  out.a22 = std::fabs(ic.a22);
  if ((ic.a11 != out.a11 || ic.a22 != out.a22) && warn)
    *warn << "warning: Gaussian form coefficients (a11=" << ic.a11 << ", a22=" << ic.a22
          << ") interpreted through absolute values; as printed the wavepacket "
             "would not be normalizable\n";
  if (!(out.a11 > 0.0) || !(out.a11 * out.a22 - out.a12 * out.a12 > 0.0))
    throw config_error("gaussian ic: quadratic form is not positive definite");
  return out;
}

WignerField gaussian_wavepacket(const GaussianIC& ic, double epsilon,
                                std::shared_ptr<const GridSpec> grid) {
  if (!(epsilon > 0.0)) throw config_error("gaussian_wavepacket: epsilon must be positive");
  const double det = ic.a11 * ic.a22 - ic.a12 * ic.a12;
  if (!(ic.a11 > 0.0) || !(det > 0.0))
    throw config_error("gaussian_wavepacket: quadratic form is not positive definite");

  WignerField w(std::move(grid));
  const GridSpec& g = *w.grid;
  const double amp = std::sqrt(det) / (std::numbers::pi * epsilon);
  for (int m = 0; m < g.M; ++m) {
    const double dx = g.x[m] - ic.x0;
    double* row = &w.values[static_cast<std::size_t>(m) * g.N];
    for (int l = 0; l < g.N; ++l) {
      const double dxi = g.xi[l] - ic.xi0;
      const double q = ic.a11 * dx * dx + ic.a22 * dxi * dxi + 2.0 * ic.a12 * dx * dxi;
      row[l] = amp * std::exp(-q / epsilon);
    }
  }
  w.time = 0.0;
  return w;
}

double total_mass(const WignerField& w) {
  double s = 0.0;
  for (double v : w.values) s += v;
  return w.grid->hx * w.grid->hxi * s;
}

std::pair<double, double> error_norms(const WignerField& w, const WignerField& w_ref) {
  if (!w.grid || !w_ref.grid || !same_grid(*w.grid, *w_ref.grid))
    throw config_error("error_norms: fields live on different grids");
  double sq = 0.0, linf = 0.0;
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    const double diff = std::fabs(w.values[i] - w_ref.values[i]);
    sq += diff * diff;
    if (diff > linf) linf = diff;
  }
  return {std::sqrt(w.grid->hx * w.grid->hxi * sq), linf};
}

} // namespace wpfp
