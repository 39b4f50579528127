#include "heis/symmetry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heis {

namespace {

constexpr double kZeroU = 1e-12;     // below this, U is treated as zero
constexpr double kOrbitTol = 1e-10;  // relative rho~ comparison

void require_valid(const IsometryScaling& t) {
  if (t.r == 0.0) throw std::invalid_argument("isometry scaling: r must be nonzero");
  if (!is_orthogonal(t.B))
    throw std::invalid_argument("isometry scaling: B must be orthogonal");
}

}  // namespace

Mat2 rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c, -s, s, c};
}

Mat2 transpose(const Mat2& m) { return {m.a11, m.a21, m.a12, m.a22}; }

double det(const Mat2& m) { return m.a11 * m.a22 - m.a12 * m.a21; }

bool is_orthogonal(const Mat2& m, double tol) {
  const double c1 = m.a11 * m.a11 + m.a21 * m.a21 - 1.0;
  const double c2 = m.a12 * m.a12 + m.a22 * m.a22 - 1.0;
  const double c3 = m.a11 * m.a12 + m.a21 * m.a22;
  return std::abs(c1) <= tol && std::abs(c2) <= tol && std::abs(c3) <= tol;
}

IsometryScaling inverse(const IsometryScaling& t) {
  require_valid(t);
  const Mat2 bt = transpose(t.B);
  const double d = det(t.B);
  const GroupElement pinv = group_inverse(t.p);
  // (L_p o psi_B)^{-1} = L_{psi_B^{-1}(p^{-1})} o psi_B^{-1}
  const GroupElement q{bt.a11 * pinv.x + bt.a12 * pinv.y,
                       bt.a21 * pinv.x + bt.a22 * pinv.y, d * pinv.z};
  return {bt, q, 1.0 / t.r};
}

IsometryScaling compose(const IsometryScaling& outer,
                        const IsometryScaling& inner) {
  require_valid(outer);
  require_valid(inner);
  // (L_p o B) o (L_q o C) = L_{p . B(q)} o BC
  const GroupElement bq =
      apply_isometry({outer.B, GroupElement{}, 1.0}, inner.p);
  const Mat2 bc{outer.B.a11 * inner.B.a11 + outer.B.a12 * inner.B.a21,
                outer.B.a11 * inner.B.a12 + outer.B.a12 * inner.B.a22,
                outer.B.a21 * inner.B.a11 + outer.B.a22 * inner.B.a21,
                outer.B.a21 * inner.B.a12 + outer.B.a22 * inner.B.a22};
  return {bc, group_mul(outer.p, bq), outer.r * inner.r};
}

AlgebraVector push_velocity(const IsometryScaling& t, const AlgebraVector& v) {
  return {t.B.a11 * v.c1 + t.B.a12 * v.c2, t.B.a21 * v.c1 + t.B.a22 * v.c2,
          det(t.B) * v.c3};
}

GroupElement apply_isometry(const IsometryScaling& t, const GroupElement& g) {
  const GroupElement lin{t.B.a11 * g.x + t.B.a12 * g.y,
                         t.B.a21 * g.x + t.B.a22 * g.y, det(t.B) * g.z};
  return group_mul(t.p, lin);
}

LorentzForce act_on_force(const IsometryScaling& t, const LorentzForce& f) {
  require_valid(t);
  const double scale = t.r * det(t.B);
  const double bu1 = t.B.a11 * f.beta + t.B.a12 * f.alpha;
  const double bu2 = t.B.a21 * f.beta + t.B.a22 * f.alpha;
  return {scale * bu1, scale * bu2, scale * f.rho};
}

OrbitResult canonicalize(const LorentzForce& f) {
  if (is_zero(f)) {
    return {LorentzForce{}, IsometryScaling{}};
  }
  const double nu = std::hypot(f.beta, f.alpha);
  if (nu <= kZeroU) {
    // Pure dx^dy component: scale rho to 1.
    return {LorentzForce{0.0, 0.0, 1.0},
            IsometryScaling{kIdentity2, GroupElement{}, 1.0 / f.rho}};
  }
  // Rotate U onto |U| e1 and divide by |U|; flip the sign of rho~ with
  // (-Id, -1) if needed.
  IsometryScaling w{Mat2{f.beta / nu, f.alpha / nu, -f.alpha / nu,
                         f.beta / nu},
                    GroupElement{}, 1.0 / nu};
  if (f.rho < 0.0) {
    w.B = {-w.B.a11, -w.B.a12, -w.B.a21, -w.B.a22};
    w.r = -w.r;
  }
  return {act_on_force(w, f), w};
}

bool orbit_equal(const LorentzForce& f1, const LorentzForce& f2) {
  const OrbitResult c1 = canonicalize(f1);
  const OrbitResult c2 = canonicalize(f2);
  const bool zero1 = is_zero(c1.canonical), zero2 = is_zero(c2.canonical);
  if (zero1 || zero2) return zero1 == zero2;
  const bool exact1 = std::hypot(c1.canonical.beta, c1.canonical.alpha) <= kZeroU;
  const bool exact2 = std::hypot(c2.canonical.beta, c2.canonical.alpha) <= kZeroU;
  if (exact1 != exact2) return false;
  if (exact1) return true;  // both F_{0,1}
  const double r1 = c1.canonical.rho, r2 = c2.canonical.rho;
  return std::abs(r1 - r2) <= kOrbitTol * (1.0 + std::max(r1, r2));
}

std::string to_string(IsotropyClass c) {
  switch (c) {
    case IsotropyClass::GenericPair: return "generic_pair";
    case IsotropyClass::HarmonicFour: return "harmonic_four";
    case IsotropyClass::ExactCircle: return "exact_circle";
    case IsotropyClass::Full: return "full";
  }
  return "unknown";
}

IsotropyClass isotropy_description(const LorentzForce& f) {
  const LorentzForce c = canonicalize(f).canonical;
  if (is_zero(c)) return IsotropyClass::Full;
  if (std::hypot(c.beta, c.alpha) <= kZeroU) return IsotropyClass::ExactCircle;
  return c.rho > kZeroU ? IsotropyClass::GenericPair
                        : IsotropyClass::HarmonicFour;
}

std::vector<IsometryScaling> isotropy_generators(const LorentzForce& f) {
  const Mat2 reflect_x{-1.0, 0.0, 0.0, 1.0};
  const Mat2 minus_id{-1.0, 0.0, 0.0, -1.0};
  switch (isotropy_description(f)) {
    case IsotropyClass::GenericPair:
      return {{kIdentity2, {}, 1.0}, {kReflectY, {}, -1.0}};
    case IsotropyClass::HarmonicFour:
      return {{kIdentity2, {}, 1.0},
              {reflect_x, {}, 1.0},
              {minus_id, {}, -1.0},
              {kReflectY, {}, -1.0}};
    case IsotropyClass::ExactCircle: {
      std::vector<IsometryScaling> out;
      for (const double a : {0.4, std::numbers::pi / 3.0, 2.2}) {
        out.push_back({rotation(a), {}, 1.0});
        Mat2 refl = rotation(a);
        refl.a12 = -refl.a12;
        refl.a22 = -refl.a22;  // rotation composed with kReflectY
        out.push_back({refl, {}, -1.0});
      }
      return out;
    }
    case IsotropyClass::Full:
      return {{kIdentity2, {}, 1.0},
              {rotation(1.1), {}, 0.7},
              {reflect_x, {}, -2.0}};
  }
  return {};
}

Trajectory act_on_curve(const IsometryScaling& t, const Trajectory& gamma) {
  require_valid(t);
  const IsometryScaling iso = t;  // captured by value
  const double d = det(iso.B);
  auto eval = [iso, d, gamma](double time) {
    const TrajectoryState s = gamma(iso.r * time);
    const GroupElement q{iso.B.a11 * s.x + iso.B.a12 * s.y,
                         iso.B.a21 * s.x + iso.B.a22 * s.y, d * s.z};
    const GroupElement pos = group_mul(iso.p, q);
    // chain rule: linear part, then the Jacobian of the translation
    const double du = iso.r * (iso.B.a11 * s.xp + iso.B.a12 * s.yp);
    const double dv = iso.r * (iso.B.a21 * s.xp + iso.B.a22 * s.yp);
    const double dw = iso.r * d * s.zp;
    return TrajectoryState{pos.x,
                           pos.y,
                           pos.z,
                           du,
                           dv,
                           dw + 0.5 * (iso.p.x * dv - iso.p.y * du)};
  };
  const TrajectoryState at0 = eval(0.0);
  Trajectory out(eval, gamma.family(), act_on_force(t, gamma.force()),
                 InitialVelocity{at0.xp, at0.yp, at0.zp});
  if (gamma.period()) out.set_period(*gamma.period() / std::abs(t.r));
  return out;
}

}  // namespace heis
