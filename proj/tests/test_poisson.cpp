#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "wpfp/errors.hpp"
#include "wpfp/grid.hpp"
#include "wpfp/poisson.hpp"

using namespace wpfp;

namespace {

std::shared_ptr<const GridSpec> make(double a, double b, double c, double d, int m, int n) {
  return std::make_shared<GridSpec>(build_grid(a, b, c, d, m, n));
}

} // namespace

TEST_SUITE_BEGIN("poisson");

TEST_CASE("density closed forms") {
  const auto g = make(-2, 2, -2, 2, 32, 32);
  WignerField zero(g);
  for (double r : density(zero)) CHECK(r == 0.0);

  WignerField ones(g);
  for (double& v : ones.values) v = 1.0;
  for (double r : density(ones)) CHECK(r == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("density of the Example-1 Gaussian is its x-marginal") {
  const auto g = make(-2, 2, -2, 2, 128, 128);
  GaussianIC ic;
  ic.a11 = ic.a22 = 1;
  ic.x0 = 0.1;
  ic.xi0 = -0.2;
  const double eps = 0.1;
  const auto rho = density(gaussian_wavepacket(ic, eps, g));
  double mass = 0;
  for (double r : rho) mass += r;
  mass *= g->hx;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  // marginal of the unit 2D Gaussian: sqrt(a11/(pi*eps)) exp(-a11 (x-x0)^2/eps)
  for (int m = 0; m < 128; ++m) {
    const double dx = g->x[m] - ic.x0;
    const double expect = std::sqrt(ic.a11 / (std::numbers::pi * eps)) *
                          std::exp(-ic.a11 * dx * dx / eps);
    CHECK(rho[m] == doctest::Approx(expect).scale(1.0).epsilon(1e-8));
  }
}

TEST_CASE("solve_poisson kills constant sources") {
  const auto g = build_grid(-2, 2, -2, 2, 32, 32);
  const PotentialField v = solve_poisson(std::vector<double>(32, 3.7), 1, g);
  for (const auto& c : v.vhat) CHECK(std::abs(c) < 1e-14);
}

TEST_CASE("solve_poisson single-mode closed form") {
  const auto g = build_grid(-2, 2, -2, 2, 64, 64);
  std::vector<double> rho(64);
  for (int m = 0; m < 64; ++m) rho[m] = std::cos(g.mu[1] * (g.x[m] - g.a));
  const PotentialField v = solve_poisson(rho, -1, g);
  const auto samples = potential_samples(v, g);
  for (int m = 0; m < 64; ++m) {
    const double expect = 0.4052847345693511 * std::cos(g.mu[1] * (g.x[m] - g.a));
    CHECK(samples[m] == doctest::Approx(expect).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("solve_poisson residual: V'' = alpha (rho - mean)") {
  const auto g = build_grid(-2, 2, -2, 2, 64, 64);
  std::vector<double> rho(64);
  for (int m = 0; m < 64; ++m) {
    const double x = g.x[m];
    rho[m] = std::exp(-4.0 * x * x) + 0.25 * std::cos(g.mu[2] * (x - g.a));
  }
  double mean = 0;
  for (double r : rho) mean += r;
  mean /= 64;

  for (int alpha : {1, -1}) {
    const PotentialField v = solve_poisson(rho, alpha, g);
    // spectral second derivative of the reconstructed potential
    std::vector<std::complex<double>> d2(64);
    for (int j = 0; j < 64; ++j) d2[j] = -g.mu[j] * g.mu[j] * v.vhat[j];
    PotentialField vd2;
    vd2.vhat = d2;
    const auto lap = potential_samples(vd2, g);
    for (int m = 0; m < 64; ++m)
      CHECK(lap[m] == doctest::Approx(alpha * (rho[m] - mean)).scale(1.0).epsilon(1e-10));
  }
}

TEST_CASE("solve_poisson is invariant under constant density shifts") {
  const auto g = build_grid(-2, 2, -2, 2, 32, 32);
  std::vector<double> rho(32), shifted(32);
  for (int m = 0; m < 32; ++m) {
    rho[m] = std::sin(g.mu[1] * (g.x[m] - g.a));
    shifted[m] = rho[m] + 11.0;
  }
  const auto v1 = solve_poisson(rho, 1, g);
  const auto v2 = solve_poisson(shifted, 1, g);
  for (int j = 0; j < 32; ++j) CHECK(std::abs(v1.vhat[j] - v2.vhat[j]) < 1e-12);
}

TEST_CASE("reconstructed potential is real (conjugate symmetry preserved)") {
  const auto g = build_grid(-2, 2, -2, 2, 64, 64);
  std::vector<double> rho(64);
  for (int m = 0; m < 64; ++m) rho[m] = std::exp(-2.0 * g.x[m] * g.x[m]);
  const PotentialField v = solve_poisson(rho, -1, g);
  for (int j = 1; j < 64; ++j)
    CHECK(std::abs(v.vhat[j] - std::conj(v.vhat[64 - j])) < 1e-12);
}

TEST_CASE("self-consistent deltaV matches the direct definition for one mode") {
  const auto g = make(-2, 2, -2, 2, 32, 32);
  const double eps = 0.1;
  const std::complex<double> coeff(0.3, 0.2);

  PotentialField v;
  v.vhat.assign(32, 0.0);
  v.vhat[1] = coeff;
  v.vhat[31] = std::conj(coeff);  // V(x) = 2 Re(coeff e^{i mu_1 (x-a)})

  const DeltaVTable dv = build_delta_v_selfconsistent(v, g, eps);
  auto v_at = [&](double x) {
    return 2.0 * (coeff * std::exp(std::complex<double>(0.0, g->mu[1] * (x - g->a)))).real();
  };
  for (int m = 0; m < 32; ++m)
    for (int k = 0; k < 32; ++k) {
      const double y = 0.5 * eps * g->nu[k];
      const std::complex<double> expect(0.0, (v_at(g->x[m] + y) - v_at(g->x[m] - y)) / eps);
      CHECK(std::abs(dv(m, k) - expect) < 1e-12);
    }
}

TEST_CASE("self-consistent deltaV is purely imaginary with a zero k=0 column") {
  // domain wide enough that the periodized density has a negligible
  // Nyquist mode (the unpaired mode otherwise leaks a real part)
  const auto g = make(-4, 4, -4, 4, 64, 64);
  WignerField w(g);
  for (int m = 0; m < 64; ++m)
    for (int l = 0; l < 64; ++l)
      w(m, l) = std::exp(-2.0 * (g->x[m] * g->x[m] + g->xi[l] * g->xi[l]));
  const PotentialField v = solve_poisson(density(w), -1, *g);
  const DeltaVTable dv = build_delta_v_selfconsistent(v, g, 0.1);
  double max_re = 0, scale = 0;
  for (const auto& e : dv.entries) {
    max_re = std::max(max_re, std::fabs(e.real()));
    scale = std::max(scale, std::abs(e));
  }
  CHECK(max_re <= 1e-12 * scale);
  for (int m = 0; m < 64; ++m) CHECK(std::abs(dv(m, 0)) == 0.0);

  const PotentialField empty{std::vector<std::complex<double>>(64, 0.0), 0.0};
  const DeltaVTable zero = build_delta_v_selfconsistent(empty, g, 0.1);
  for (const auto& e : zero.entries) CHECK(std::abs(e) == 0.0);
}

TEST_CASE("WPFP nonlocal pipeline preserves total mass") {
  const auto g = make(-4, 4, -4, 4, 64, 64);
  GaussianIC ic;
  ic.a11 = ic.a22 = 1;
  ic.x0 = 0.1;
  ic.xi0 = -0.2;
  WignerField w = gaussian_wavepacket(ic, 0.1, g);
  const double mass = total_mass(w);

  const PotentialField v = solve_poisson(density(w), -1, *g);
  const DeltaVTable dv = build_delta_v_selfconsistent(v, g, 0.1);
  const WignerField out = step_nonlocal(w, 0.05, dv);
  CHECK(std::fabs(total_mass(out) - mass) <= 1e-13 * std::fabs(mass));
}

TEST_CASE("shape validation") {
  const auto g = build_grid(-2, 2, -2, 2, 32, 32);
  CHECK_THROWS_AS(solve_poisson(std::vector<double>(16, 1.0), 1, g), config_error);
  CHECK_THROWS_AS(solve_poisson(std::vector<double>(32, 1.0), 2, g), config_error);
}

TEST_SUITE_END();
