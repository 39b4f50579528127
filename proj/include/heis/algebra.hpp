#ifndef HEIS_ALGEBRA_HPP
#define HEIS_ALGEBRA_HPP

#include <array>

// Arithmetic of the 3-dimensional Heisenberg group H3 in exponential
// coordinates, its Lie algebra, and left-invariant Lorentz forces.
//
// H3 is R^3 with the product
//     (v1, z1)(v2, z2) = (v1 + v2, z1 + z2 + <J v1, v2>/2),
// where v = (x, y), J(x, y) = (-y, x).  The frame e1, e2, e3 of
// left-invariant vector fields is orthonormal for the metric; the only
// non-trivial bracket is [e1, e2] = e3.

namespace heis {

// A point of H3 in exponential coordinates.
struct GroupElement {
  double x{0.0};
  double y{0.0};
  double z{0.0};
};

// A Lie-algebra vector c1*e1 + c2*e2 + c3*e3.  Also used for the
// components of a curve velocity in the left-invariant frame.
struct AlgebraVector {
  double c1{0.0};
  double c2{0.0};
  double c3{0.0};
};

// Velocity of a curve expressed in coordinate derivatives (dx, dy, dz).
struct CoordinateVelocity {
  double dx{0.0};
  double dy{0.0};
  double dz{0.0};
};

GroupElement group_mul(const GroupElement& g1, const GroupElement& g2);
GroupElement group_inverse(const GroupElement& g);

AlgebraVector bracket(const AlgebraVector& u, const AlgebraVector& v);

// Components of a coordinate velocity at g in the left-invariant frame:
// (dx, dy, dz + (dx*y - x*dy)/2).  The Euclidean norm of the result is
// the Riemannian speed.
AlgebraVector left_frame_velocity(const GroupElement& g,
                                  const CoordinateVelocity& v);

// Inverse of left_frame_velocity at the same base point.
CoordinateVelocity coordinate_velocity(const GroupElement& g,
                                       const AlgebraVector& frame);

double norm(const AlgebraVector& v);

// J on the horizontal plane span{e1,e2}: J(a,b) = (-b,a), extended by 0.
AlgebraVector horizontal_rotate(const AlgebraVector& v);

// Left-invariant Lorentz force F_{U,rho} with U = beta*e1 + alpha*e2.
// In the frame e1, e2, e3 it acts by the skew matrix
//     [ 0    -rho  -beta ]
//     [ rho   0    -alpha]
//     [ beta  alpha  0   ]
// and its kernel is spanned by J U - rho e3 whenever (U, rho) != 0.
struct LorentzForce {
  double beta{0.0};
  double alpha{0.0};
  double rho{0.0};
};

AlgebraVector apply(const LorentzForce& f, const AlgebraVector& v);

// omega_F(u, v) = <F u, v>, the value of the associated 2-form on
// left-invariant fields.
double two_form_eval(const LorentzForce& f, const AlgebraVector& u,
                     const AlgebraVector& v);

// Coefficients (c12, c13, c23) of omega_F as a coordinate 2-form
// c12 dx^dy + c13 dx^dz + c23 dy^dz at the point p.
std::array<double, 3> two_form_coordinate_coeffs(const LorentzForce& f,
                                                 const GroupElement& p);

// Direction spanning ker F_{U,rho} for (U, rho) != 0.
AlgebraVector kernel_direction(const LorentzForce& f);

bool is_zero(const LorentzForce& f, double tol = 1e-14);

}  // namespace heis

#endif  // HEIS_ALGEBRA_HPP
