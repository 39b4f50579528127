#include "heis/algebra.hpp"

#include <cmath>

namespace heis {

GroupElement group_mul(const GroupElement& g1, const GroupElement& g2) {
  // <J v1, v2> = x1*y2 - y1*x2
  return {g1.x + g2.x, g1.y + g2.y,
          g1.z + g2.z + 0.5 * (g1.x * g2.y - g1.y * g2.x)};
}

GroupElement group_inverse(const GroupElement& g) { return {-g.x, -g.y, -g.z}; }

AlgebraVector bracket(const AlgebraVector& u, const AlgebraVector& v) {
  return {0.0, 0.0, u.c1 * v.c2 - u.c2 * v.c1};
}

AlgebraVector left_frame_velocity(const GroupElement& g,
                                  const CoordinateVelocity& v) {
  return {v.dx, v.dy, v.dz + 0.5 * (v.dx * g.y - g.x * v.dy)};
}

CoordinateVelocity coordinate_velocity(const GroupElement& g,
                                       const AlgebraVector& frame) {
  return {frame.c1, frame.c2,
          frame.c3 - 0.5 * (frame.c1 * g.y - g.x * frame.c2)};
}

double norm(const AlgebraVector& v) {
  return std::sqrt(v.c1 * v.c1 + v.c2 * v.c2 + v.c3 * v.c3);
}

AlgebraVector horizontal_rotate(const AlgebraVector& v) {
  return {-v.c2, v.c1, 0.0};
}

AlgebraVector apply(const LorentzForce& f, const AlgebraVector& v) {
  return {-f.rho * v.c2 - f.beta * v.c3,
          f.rho * v.c1 - f.alpha * v.c3,
          f.beta * v.c1 + f.alpha * v.c2};
}

double two_form_eval(const LorentzForce& f, const AlgebraVector& u,
                     const AlgebraVector& v) {
  // Expanded over the antisymmetrized minors so that skew symmetry is
  // exact in floating point, not just up to rounding.
  return f.rho * (u.c1 * v.c2 - u.c2 * v.c1) +
         f.beta * (u.c1 * v.c3 - u.c3 * v.c1) +
         f.alpha * (u.c2 * v.c3 - u.c3 * v.c2);
}

std::array<double, 3> two_form_coordinate_coeffs(const LorentzForce& f,
                                                 const GroupElement& p) {
  // omega_F = rho e1^e2 + beta e1^e3 + alpha e2^e3 expanded in dx, dy, dz
  // with e3 = dz + (y dx - x dy)/2.
  return {f.rho - 0.5 * f.beta * p.x - 0.5 * f.alpha * p.y, f.beta, f.alpha};
}

AlgebraVector kernel_direction(const LorentzForce& f) {
  // J U - rho e3 with U = (beta, alpha).
  return {-f.alpha, f.beta, -f.rho};
}

bool is_zero(const LorentzForce& f, double tol) {
  return std::abs(f.beta) <= tol && std::abs(f.alpha) <= tol &&
         std::abs(f.rho) <= tol;
}

}  // namespace heis
