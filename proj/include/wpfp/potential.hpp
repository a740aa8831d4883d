#pragma once

#include <string>
#include <vector>

namespace wpfp {

// Whitelisted potential forms. External variants are globally defined
// closed-form expressions and are evaluated analytically, also at points
// outside the truncated box. SelfConsistent defers to the Poisson solve.
enum class PotentialKind {
  Harmonic,          // 0.5*c2*x^2 + c1*x
  Polynomial,        // sum coeffs[i] * x^i
  DoubleWell,        // (x^2 - 1)^2
  HarmonicPlusSine,  // 0.5*x^2 + x + amplitude*sin(x)
  ArctanStep,        // arctan(steepness*x) + pi/2
  SelfConsistent,    // Laplacian V = alpha * rho, alpha = +-1
};

struct PotentialSpec {
  PotentialKind kind = PotentialKind::Harmonic;
  double c2 = 0, c1 = 0;              // Harmonic
  std::vector<double> coeffs;         // Polynomial
  double amplitude = 0.1;             // HarmonicPlusSine
  double steepness = 10.0;            // ArctanStep
  int alpha = 1;                      // SelfConsistent

  static PotentialSpec harmonic(double c2, double c1);
  static PotentialSpec polynomial(std::vector<double> coeffs);
  static PotentialSpec double_well();
  static PotentialSpec harmonic_plus_sine(double amplitude = 0.1);
  static PotentialSpec arctan_step(double steepness = 10.0);
  static PotentialSpec self_consistent(int alpha);
};

bool is_external(const PotentialSpec& p);

// True when V is a polynomial of degree <= 2; fills the (c2, c1)
// coefficients of V = 0.5*c2*x^2 + c1*x (constant offset dropped).
bool quadratic_coefficients(const PotentialSpec& p, double& c2, double& c1);

// Evaluates an external potential; throws config_error for SelfConsistent.
// All presets are static in time; t is accepted for interface symmetry.
double eval_potential(const PotentialSpec& p, double x, double t = 0.0);

std::string potential_name(const PotentialSpec& p);

} // namespace wpfp
