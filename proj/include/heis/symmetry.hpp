#ifndef HEIS_SYMMETRY_HPP
#define HEIS_SYMMETRY_HPP

#include <vector>

#include "heis/algebra.hpp"
#include "heis/trajectory.hpp"

// The action of Iso(H3) x R* on left-invariant Lorentz forces and on
// curves.  An isometry fixing the identity acts on the algebra by an
// orthogonal map B of the horizontal plane extended to the centre by
// det(B); a general isometry prepends a left translation.  The pair
// (psi, r) sends a force F to r psi_* F psi_*^{-1} and a curve gamma to
// t -> psi(gamma(r t)).  On the force parameters this reduces to
// (B, r) . F_{U,rho} = r det(B) F_{B U, rho}.

namespace heis {

// 2x2 matrix acting on span{e1, e2}, row-major.
struct Mat2 {
  double a11{1.0}, a12{0.0};
  double a21{0.0}, a22{1.0};
};

Mat2 rotation(double angle);
Mat2 transpose(const Mat2& m);
double det(const Mat2& m);
bool is_orthogonal(const Mat2& m, double tol = 1e-14);

inline constexpr Mat2 kIdentity2{1.0, 0.0, 0.0, 1.0};
// Reflection fixing e1; paired with r = -1 it fixes every canonical
// force and realises the x0 < 0 reduction.
inline constexpr Mat2 kReflectY{1.0, 0.0, 0.0, -1.0};

// An isometry (left translation by p composed with the orthogonal part
// B) together with a time scale r != 0.
struct IsometryScaling {
  Mat2 B{};
  GroupElement p{};
  double r{1.0};
};

IsometryScaling inverse(const IsometryScaling& t);
IsometryScaling compose(const IsometryScaling& outer,
                        const IsometryScaling& inner);

// The differential at the identity: (B v, det(B) z).
AlgebraVector push_velocity(const IsometryScaling& t, const AlgebraVector& v);

// The isometry applied to a point (translation included).
GroupElement apply_isometry(const IsometryScaling& t, const GroupElement& g);

LorentzForce act_on_force(const IsometryScaling& t, const LorentzForce& f);

struct OrbitResult {
  LorentzForce canonical;
  IsometryScaling witness;  // act_on_force(witness, original) == canonical
};

// Normal form of the orbit: F_{e1, rho~} with rho~ >= 0 when U != 0,
// F_{0,1} when U = 0 != rho, the zero force otherwise.
OrbitResult canonicalize(const LorentzForce& f);

bool orbit_equal(const LorentzForce& f1, const LorentzForce& f2);

enum class IsotropyClass { GenericPair, HarmonicFour, ExactCircle, Full };
std::string to_string(IsotropyClass c);

// Isotropy of the canonical representative of the orbit of f.
IsotropyClass isotropy_description(const LorentzForce& f);

// Concrete elements of that isotropy group (a sample of the circle for
// the exact class, the full finite set otherwise, translations omitted).
std::vector<IsometryScaling> isotropy_generators(const LorentzForce& f);

// (t . gamma)(s) = psi(gamma(r s)); the result solves act_on_force(t, F).
Trajectory act_on_curve(const IsometryScaling& t, const Trajectory& gamma);

}  // namespace heis

#endif  // HEIS_SYMMETRY_HPP
