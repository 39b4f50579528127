#ifndef HEIS_QUARTIC_HPP
#define HEIS_QUARTIC_HPP

#include <array>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "heis/trajectory.hpp"

// Analysis of the quartic that controls the first coordinate of a
// canonical-force magnetic trajectory.  With s = z0 + rho the squared
// velocity satisfies x'^2 = P(x + s) where
//     P(eta) = -(eta^4 + 2 p0 eta^2 - 8 rho eta + q0) / 4,
//     p0 = 2(y0 + 1) - s^2,
//     q0 = p0^2 + 8 rho s - 4(x0^2 + (y0+1)^2).
// The sign of the quartic discriminant and the position of s among the
// roots select one of seven solution families.

namespace heis {

struct ClassificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReducedParams {
  InitialVelocity ic;
  double rho{0.0};
  double s{0.0};   // z0 + rho
  double p0{0.0};
  double q0{0.0};
  // Degenerate inputs x0 = 0, (y0+1) s = rho force x(t) == 0; the curve
  // is then a one-parameter subgroup.
  bool trivial{false};
};

ReducedParams reduced_params(const InitialVelocity& ic, double rho);

// P and P' at eta; P(s) = x0^2 and P'(s) = 2(rho - (y0+1) s) hold by
// construction.
double quartic_P(const ReducedParams& p, double eta);
double quartic_P_prime(const ReducedParams& p, double eta);

double discriminant(const ReducedParams& p);

// All roots of eta^4 + 2 p0 eta^2 - 8 rho eta + q0, via the eigenvalues
// of the companion matrix polished by Newton steps.  Real roots come
// first in ascending order, then conjugate pairs (positive imaginary
// part first).
std::array<std::complex<double>, 4> quartic_roots(const ReducedParams& p);

enum class QuarticCase {
  Trivial,
  NegDelta,
  PosDeltaLow,
  PosDeltaHigh,
  ZeroDeltaMuPos,
  ZeroDeltaMuNegRight,
  ZeroDeltaMuNegLeft,
  ZeroDeltaCubic
};

std::string to_string(QuarticCase c);
TrajectoryFamily family_of(QuarticCase c);

struct QuarticAnalysis {
  ReducedParams params;
  double delta{0.0};
  QuarticCase kind{QuarticCase::Trivial};
  std::array<std::complex<double>, 4> roots{};

  // Fields below are NaN where the case does not define them.
  static constexpr double kUnset =
      std::numeric_limits<double>::quiet_NaN();
  // Extreme real roots (all cases except Trivial).  For a repeated
  // discriminant these collapse onto the double root.
  double r1{kUnset}, r4{kUnset};
  // Inner roots: real for delta > 0, the r2 = conj(r3) pair otherwise.
  double r2{kUnset}, r3{kUnset};
  std::complex<double> complex_pair{};

  double delta1{kUnset}, delta4{kUnset};  // |r1-r2|, |r4-r2| for delta < 0
  double k{kUnset};            // modulus for the delta < 0 family
  double k1{kUnset};           // modulus for the delta > 0 families
  double double_root{kUnset};  // repeated root r when delta = 0
  double mu{kUnset};           // (p0 + 3 r^2)/2
  double constant{kUnset};     // the family's integration constant
};

// Full classification.  Callers are expected to have applied the
// reflection symmetry first so that x0 >= 0.  `tol` scales the
// discriminant-degeneracy threshold |delta| <= tol*(1+|p0|^6+|q0|^3).
QuarticAnalysis classify(const InitialVelocity& ic, double rho,
                         double tol = 1e-9);

}  // namespace heis

#endif  // HEIS_QUARTIC_HPP
