#include "wpfp/potential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wpfp/errors.hpp"

namespace wpfp {

PotentialSpec PotentialSpec::harmonic(double c2, double c1) {
  PotentialSpec p;
  p.kind = PotentialKind::Harmonic;
  p.c2 = c2;
  p.c1 = c1;
  return p;
}

PotentialSpec PotentialSpec::polynomial(std::vector<double> coeffs) {
  PotentialSpec p;
  p.kind = PotentialKind::Polynomial;
  p.coeffs = std::move(coeffs);
  return p;
}

PotentialSpec PotentialSpec::double_well() {
  PotentialSpec p;
  p.kind = PotentialKind::DoubleWell;
  return p;
}

PotentialSpec PotentialSpec::harmonic_plus_sine(double amplitude) {
  PotentialSpec p;
  p.kind = PotentialKind::HarmonicPlusSine;
  p.amplitude = amplitude;
  return p;
}

PotentialSpec PotentialSpec::arctan_step(double steepness) {
  PotentialSpec p;
  p.kind = PotentialKind::ArctanStep;
  p.steepness = steepness;
  return p;
}

PotentialSpec PotentialSpec::self_consistent(int alpha) {
  if (alpha != 1 && alpha != -1)
    throw config_error("self_consistent potential: alpha must be +1 or -1");
  PotentialSpec p;
  p.kind = PotentialKind::SelfConsistent;
  p.alpha = alpha;
  return p;
}

bool is_external(const PotentialSpec& p) { return p.kind != PotentialKind::SelfConsistent; }

bool quadratic_coefficients(const PotentialSpec& p, double& c2, double& c1) {
  switch (p.kind) {
    case PotentialKind::Harmonic:
      c2 = p.c2;
      c1 = p.c1;
      return true;
    case PotentialKind::Polynomial: {
      for (std::size_t i = 3; i < p.coeffs.size(); ++i)
        if (p.coeffs[i] != 0.0) return false;
      c2 = p.coeffs.size() > 2 ? 2.0 * p.coeffs[2] : 0.0;
      c1 = p.coeffs.size() > 1 ? p.coeffs[1] : 0.0;
      return true;
    }
    default:
      return false;
  }
}

double eval_potential(const PotentialSpec& p, double x, double /*t*/) {
  switch (p.kind) {
    case PotentialKind::Harmonic:
      return 0.5 * p.c2 * x * x + p.c1 * x;
    case PotentialKind::Polynomial: {
      double v = 0.0;
      for (std::size_t i = p.coeffs.size(); i-- > 0;) v = v * x + p.coeffs[i];
      return v;
    }
    case PotentialKind::DoubleWell: {
      const double q = x * x - 1.0;
      return q * q;
    }
    case PotentialKind::HarmonicPlusSine:
      return 0.5 * x * x + x + p.amplitude * std::sin(x);
    case PotentialKind::ArctanStep:
      return std::atan(p.steepness * x) + std::numbers::pi / 2.0;
    case PotentialKind::SelfConsistent:
      throw config_error("eval_potential: self-consistent potential has no closed form");
  }
  throw config_error("eval_potential: unknown potential kind");
}

std::string potential_name(const PotentialSpec& p) {
  std::ostringstream os;
  switch (p.kind) {
    case PotentialKind::Harmonic:
      os << "harmonic(c2=" << p.c2 << ", c1=" << p.c1 << ")";
      break;
    case PotentialKind::Polynomial: {
      os << "polynomial(";
      for (std::size_t i = 0; i < p.coeffs.size(); ++i) os << (i ? " " : "") << p.coeffs[i];
      os << ")";
      break;
    }
    case PotentialKind::DoubleWell:
      os << "double_well";
      break;
    case PotentialKind::HarmonicPlusSine:
      os << "harmonic_plus_sine(A=" << p.amplitude << ")";
      break;
    case PotentialKind::ArctanStep:
      os << "arctan_step(s=" << p.steepness << ")";
      break;
    case PotentialKind::SelfConsistent:
      os << "self_consistent(alpha=" << p.alpha << ")";
      break;
  }
  return os.str();
}

} // namespace wpfp
