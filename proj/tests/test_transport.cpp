#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "wpfp/errors.hpp"
#include "wpfp/grid.hpp"
#include "wpfp/moment_oracle.hpp"
#include "wpfp/poisson.hpp"
#include "wpfp/spectral.hpp"
#include "wpfp/transport.hpp"

using namespace wpfp;

namespace {

std::shared_ptr<const GridSpec> make(double a, double b, double c, double d, int m, int n) {
  return std::make_shared<GridSpec>(build_grid(a, b, c, d, m, n));
}

WignerField example1_gaussian(std::shared_ptr<const GridSpec> g) {
  GaussianIC ic;
  ic.a11 = ic.a22 = 1;
  ic.x0 = 0.1;
  ic.xi0 = -0.2;
  return gaussian_wavepacket(ic, 0.1, std::move(g));
}

double max_abs_diff(const WignerField& a, const WignerField& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::fabs(a.values[i] - b.values[i]));
  return m;
}

} // namespace

TEST_SUITE_BEGIN("transport");

TEST_CASE("convection with tau = 0 is the identity") {
  const auto g = make(-2, 2, -2, 2, 64, 64);
  const WignerField w = example1_gaussian(g);
  CHECK(max_abs_diff(step_convection(w, 0.0), w) < 1e-14);
}

TEST_CASE("convection leaves x-independent fields unchanged") {
  const auto g = make(-2, 2, -2, 2, 32, 32);
  WignerField w(g);
  for (int m = 0; m < 32; ++m)
    for (int l = 0; l < 32; ++l) w(m, l) = std::exp(-g->xi[l] * g->xi[l]);
  CHECK(max_abs_diff(step_convection(w, 0.37), w) < 1e-12);
}

TEST_CASE("convection advects a single Fourier mode exactly") {
  const auto g = make(-2, 2, -2, 2, 64, 64);
  WignerField w(g);
  for (int m = 0; m < 64; ++m)
    for (int l = 0; l < 64; ++l) w(m, l) = std::cos(g->mu[1] * (g->x[m] - g->a));
  const double tau = 0.3;
  const WignerField out = step_convection(w, tau);
  for (int m = 0; m < 64; ++m)
    for (int l = 0; l < 64; ++l) {
      const double expect = std::cos(g->mu[1] * (g->x[m] - g->a - g->xi[l] * tau));
      CHECK(out(m, l) == doctest::Approx(expect).scale(1.0).epsilon(1e-12));
    }
  CHECK(out.imag_residual < 1e-10);
}

TEST_CASE("convection semigroup property") {
  const auto g = make(-2, 2, -2, 2, 64, 64);
  const WignerField w = example1_gaussian(g);
  const WignerField two = step_convection(step_convection(w, 0.11), 0.23);
  const WignerField one = step_convection(w, 0.34);
  CHECK(max_abs_diff(two, one) < 1e-12);
}

TEST_CASE("build_delta_v_external closed forms") {
  const auto g = make(-2, 2, -2, 2, 16, 16);
  const double eps = 0.1;

  const DeltaVTable zero = build_delta_v_external(PotentialSpec::polynomial({0.0}), g, eps);
  for (const auto& e : zero.entries) CHECK(std::abs(e) == 0.0);

  // V(x) = x gives deltaV(x, eps*nu/2) = i*nu
  const DeltaVTable lin = build_delta_v_external(PotentialSpec::polynomial({0.0, 1.0}), g, eps);
  for (int m = 0; m < 16; ++m)
    for (int k = 0; k < 16; ++k) {
      CHECK(lin(m, k).real() == 0.0);
      CHECK(lin(m, k).imag() == doctest::Approx(g->nu[k]).scale(1.0).epsilon(1e-13));
    }
  for (int m = 0; m < 16; ++m) CHECK(std::abs(lin(m, 0)) == 0.0);

  CHECK_THROWS_AS(build_delta_v_external(PotentialSpec::self_consistent(1), g, eps),
                  config_error);
}

TEST_CASE("nonlocal step with zero potential is the identity") {
  const auto g = make(-2, 2, -2, 2, 32, 32);
  const WignerField w = example1_gaussian(g);
  const DeltaVTable dv = build_delta_v_external(PotentialSpec::polynomial({0.0}), g, 0.1);
  CHECK(max_abs_diff(step_nonlocal(w, 0.25, dv), w) < 1e-13);
}

TEST_CASE("linear potential shifts the momentum coordinate exactly") {
  // band-limited field so the spectral shift has a closed form
  const auto g = make(-2, 2, -3, 3, 16, 32);
  WignerField w(g);
  for (int m = 0; m < 16; ++m)
    for (int l = 0; l < 32; ++l)
      w(m, l) = (1.0 + 0.5 * std::cos(g->mu[1] * (g->x[m] - g->a))) *
                std::cos(g->nu[1] * (g->xi[l] - g->c));
  const double tau = 0.4;
  const DeltaVTable dv = build_delta_v_external(PotentialSpec::polynomial({0.0, 1.0}), g, 0.1);
  const WignerField out = step_nonlocal(w, tau, dv);
  for (int m = 0; m < 16; ++m)
    for (int l = 0; l < 32; ++l) {
      const double expect = (1.0 + 0.5 * std::cos(g->mu[1] * (g->x[m] - g->a))) *
                            std::cos(g->nu[1] * (g->xi[l] + tau - g->c));
      CHECK(out(m, l) == doctest::Approx(expect).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("quadratic potential reduces to the classical xi-shear") {
  const auto g = make(-2, 2, -3, 3, 16, 32);
  WignerField w(g);
  for (int m = 0; m < 16; ++m)
    for (int l = 0; l < 32; ++l) w(m, l) = std::cos(g->nu[1] * (g->xi[l] - g->c));
  const double tau = 0.2;
  const DeltaVTable dv =
      build_delta_v_external(PotentialSpec::polynomial({0.0, 0.0, 0.5}), g, 0.1);
  const WignerField out = step_nonlocal(w, tau, dv);
  for (int m = 0; m < 16; ++m)
    for (int l = 0; l < 32; ++l) {
      const double expect = std::cos(g->nu[1] * (g->xi[l] + g->x[m] * tau - g->c));
      CHECK(out(m, l) == doctest::Approx(expect).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("nonlocal step preserves the xi-marginal pointwise") {
  const auto g = make(-2, 2, -2, 2, 32, 32);
  const WignerField w = example1_gaussian(g);
  const DeltaVTable dv = build_delta_v_external(PotentialSpec::double_well(), g, 0.1);
  const WignerField out = step_nonlocal(w, 0.1, dv);
  const auto rho_before = density(w);
  const auto rho_after = density(out);
  for (int m = 0; m < 32; ++m)
    CHECK(rho_after[m] == doctest::Approx(rho_before[m]).scale(1.0).epsilon(1e-13));
}

TEST_CASE("diffusion with zero coefficients is the identity") {
  const auto g = make(-2, 2, -2, 2, 32, 32);
  const WignerField w = example1_gaussian(g);
  CHECK(max_abs_diff(step_diffusion(w, 0.5, 0, 0, 0), w) < 1e-13);
}

TEST_CASE("diffusion decays a single mode by the closed-form factor") {
  const auto g = make(-2, 2, -2, 2, 64, 64);
  WignerField w(g);
  for (int m = 0; m < 64; ++m)
    for (int l = 0; l < 64; ++l) w(m, l) = std::cos(g->mu[1] * (g->x[m] - g->a));
  const WignerField out = step_diffusion(w, 0.1, 0.2, 0.0, 0.0);
  const double factor = 0.9518498073692735;  // exp(-0.2*(pi/2)^2*0.1)
  for (int m = 0; m < 64; ++m)
    CHECK(out(m, 0) == doctest::Approx(factor * w(m, 0)).scale(1.0).epsilon(1e-12));
}

TEST_CASE("heat-kernel oracle: Gaussian variances grow by 2*D*tau") {
  const auto g = make(-8, 8, -8, 8, 64, 64);
  MomentState ms;
  ms.mean_x = 0.3;
  ms.mean_xi = -0.2;
  ms.cov_xx = 0.25;
  ms.cov_xixi = 0.3;
  ms.cov_xxi = 0.0;
  const WignerField w0 = gaussian_from_moments(ms, g);
  const double tau = 0.25, dqq = 0.3, dpp = 0.2;
  const WignerField out = step_diffusion(w0, tau, dqq, 0.0, dpp);

  MomentState grown = ms;
  grown.cov_xx += 2.0 * dqq * tau;
  grown.cov_xixi += 2.0 * dpp * tau;
  const WignerField expect = gaussian_from_moments(grown, g);
  CHECK(max_abs_diff(out, expect) < 1e-8);
}

TEST_CASE("diffusion and nonlocal semigroup properties") {
  const auto g = make(-2, 2, -2, 2, 64, 64);
  const WignerField w = example1_gaussian(g);

  const WignerField d_two = step_diffusion(step_diffusion(w, 0.1, 0.2, 0.05, 0.2), 0.15, 0.2, 0.05, 0.2);
  const WignerField d_one = step_diffusion(w, 0.25, 0.2, 0.05, 0.2);
  CHECK(max_abs_diff(d_two, d_one) < 1e-12);

  const DeltaVTable dv = build_delta_v_external(PotentialSpec::harmonic(1.0, 1.0), g, 0.1);
  const WignerField n_two = step_nonlocal(step_nonlocal(w, 0.1, dv), 0.15, dv);
  const WignerField n_one = step_nonlocal(w, 0.25, dv);
  CHECK(max_abs_diff(n_two, n_one) < 1e-12);
}

TEST_CASE("each transport stage preserves total mass to 1e-13 relative") {
  const auto g = make(-2, 2, -2, 2, 128, 128);
  const WignerField w = example1_gaussian(g);
  const double mass = total_mass(w);
  const DeltaVTable dv = build_delta_v_external(PotentialSpec::harmonic(1.0, 1.0), g, 0.1);

  CHECK(std::fabs(total_mass(step_convection(w, 0.05)) - mass) <= 1e-13 * std::fabs(mass));
  CHECK(std::fabs(total_mass(step_nonlocal(w, 0.05, dv)) - mass) <= 1e-13 * std::fabs(mass));
  CHECK(std::fabs(total_mass(step_diffusion(w, 0.05, 0.2, 0.05, 0.2)) - mass) <=
        1e-13 * std::fabs(mass));
}

TEST_CASE("nonlocal generator equals the finite Moyal form for a cubic potential") {
  const auto g = make(-2, 2, -2, 2, 32, 32);
  const double eps = 0.1;
  const PotentialSpec pot = PotentialSpec::polynomial({0.2, 0.7, -0.5, 0.3});

  // band-limited deterministic field
  WignerField w(g);
  for (int m = 0; m < 32; ++m)
    for (int l = 0; l < 32; ++l) {
      const double px = g->x[m] - g->a, pxi = g->xi[l] - g->c;
      w(m, l) = 1.0 + 0.8 * std::cos(g->mu[1] * px) * std::cos(g->nu[2] * pxi) +
                0.3 * std::sin(g->mu[3] * px) * std::sin(g->nu[1] * pxi) -
                0.2 * std::cos(g->nu[4] * pxi);
    }

  // left side: multiply xi-Fourier coefficients by deltaV(x, eps*nu/2)
  const DeltaVTable dv = build_delta_v_external(pot, g, eps);
  Spectral fft(*g);
  fft.load(w);
  fft.forward_xi();
  auto* buf = fft.buffer();
  for (int m = 0; m < 32; ++m)
    for (int k = 0; k < 32; ++k) buf[static_cast<std::size_t>(m) * 32 + k] *= dv(m, k);
  fft.backward_xi();
  WignerField lhs = w;
  fft.store(lhs, 32.0);

  // right side: V'(x) dW/dxi - (eps^2/24) V'''(x) d3W/dxi3, spectrally
  auto xi_derivative = [&](int order) {
    fft.load(w);
    fft.forward_xi();
    auto* b = fft.buffer();
    for (int m = 0; m < 32; ++m)
      for (int k = 0; k < 32; ++k) {
        std::complex<double> f = std::pow(std::complex<double>(0.0, g->nu[k]), order);
        b[static_cast<std::size_t>(m) * 32 + k] *= f;
      }
    fft.backward_xi();
    WignerField out = w;
    fft.store(out, 32.0);
    return out;
  };
  const WignerField d1 = xi_derivative(1);
  const WignerField d3 = xi_derivative(3);
  WignerField rhs(g);
  for (int m = 0; m < 32; ++m) {
    const double x = g->x[m];
    const double vp = 0.7 - 1.0 * x + 0.9 * x * x;  // V'
    const double vppp = 1.8;                        // V'''
    for (int l = 0; l < 32; ++l)
      rhs(m, l) = vp * d1(m, l) - (eps * eps / 24.0) * vppp * d3(m, l);
  }
  CHECK(max_abs_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("diffusion factors stay below 1 exactly when the matrix is PSD") {
  const auto g = build_grid(-2, 2, -2, 2, 16, 16);
  auto max_factor = [&](double dqq, double dpq, double dpp) {
    const auto t = diffusion_factor_table(g, 0.1, dqq, dpq, dpp);
    double m = 0;
    for (double f : t) m = std::max(m, std::fabs(f));
    return m;
  };
  CHECK(max_factor(0.2, 0.05, 0.2) <= 1.0);   // PSD
  CHECK(max_factor(0.1, 0.1, 0.1) <= 1.0);    // boundary PSD
  CHECK(max_factor(0.01, 0.3, 0.01) > 1.0);   // indefinite
}

TEST_CASE("spectral steps keep the imaginary residue tiny on resolved fields") {
  const auto g = make(-2, 2, -2, 2, 128, 128);
  WignerField w = example1_gaussian(g);
  const DeltaVTable dv = build_delta_v_external(PotentialSpec::harmonic(1.0, 1.0), g, 0.1);
  Spectral fft(*g);
  step_convection_inplace(w, 0.01, fft);
  CHECK(w.imag_residual <= 1e-10);
  step_nonlocal_inplace(w, 0.01, dv, fft);
  CHECK(w.imag_residual <= 1e-10);
  step_diffusion_inplace(w, 0.01, 0.2, 0.05, 0.2, fft);
  CHECK(w.imag_residual <= 1e-10);
}

TEST_SUITE_END();
