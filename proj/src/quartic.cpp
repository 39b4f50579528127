#include "heis/quartic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "heis/elliptic.hpp"

namespace heis {

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

std::complex<double> quartic_Q(const ReducedParams& p,
                               std::complex<double> eta) {
  return ((eta * eta + 2.0 * p.p0) * eta - 8.0 * p.rho) * eta + p.q0;
}

std::complex<double> quartic_Q_prime(const ReducedParams& p,
                                     std::complex<double> eta) {
  return (4.0 * eta * eta + 4.0 * p.p0) * eta - 8.0 * p.rho;
}

// Candidate critical points of the quartic: real parts of the roots of
// eta^3 + p0 eta - 2 rho by companion-matrix eigenvalues.  A repeated
// quartic root perturbs the derivative's double root into a close pair
// (possibly complex with small imaginary part), so the real parts are
// kept unconditionally; the caller picks the candidate minimising |Q|.
std::vector<double> critical_points(const ReducedParams& p) {
  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(1, 0) = companion(2, 1) = 1.0;
  companion(0, 2) = 2.0 * p.rho;
  companion(1, 2) = -p.p0;
  const Eigen::EigenSolver<Eigen::Matrix3d> solver(companion);
  std::vector<double> out;
  for (int i = 0; i < 3; ++i) out.push_back(solver.eigenvalues()(i).real());
  return out;
}

}  // namespace

ReducedParams reduced_params(const InitialVelocity& ic, double rho) {
  ReducedParams p;
  p.ic = ic;
  p.rho = rho;
  p.s = ic.z0 + rho;
  const double a = ic.y0 + 1.0;
  p.p0 = 2.0 * a - p.s * p.s;
  p.q0 = p.p0 * p.p0 + 8.0 * rho * p.s - 4.0 * (ic.x0 * ic.x0 + a * a);
  const double scale = 1.0 + std::abs(a * p.s) + std::abs(rho);
  p.trivial =
      std::abs(ic.x0) <= 1e-13 && std::abs(a * p.s - rho) <= 1e-13 * scale;
  return p;
}

double quartic_P(const ReducedParams& p, double eta) {
  return -0.25 * quartic_Q(p, eta).real();
}

double quartic_P_prime(const ReducedParams& p, double eta) {
  return -0.25 * quartic_Q_prime(p, eta).real();
}

double discriminant(const ReducedParams& p) {
  const double p0 = p.p0, q0 = p.q0, r2 = p.rho * p.rho;
  return q0 * p0 * p0 * p0 * p0 - 8.0 * r2 * p0 * p0 * p0 -
         432.0 * r2 * r2 + 72.0 * r2 * q0 * p0 - 2.0 * q0 * q0 * p0 * p0 +
         q0 * q0 * q0;
}

std::array<std::complex<double>, 4> quartic_roots(const ReducedParams& p) {
  if (p.trivial) {
    throw ClassificationError(
        "quartic_roots: degenerate initial data (x stays at 0)");
  }
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;
  companion(0, 3) = -p.q0;
  companion(1, 3) = 8.0 * p.rho;
  companion(2, 3) = -2.0 * p.p0;
  const Eigen::EigenSolver<Eigen::Matrix4d> solver(companion);
  std::array<std::complex<double>, 4> roots;
  for (int i = 0; i < 4; ++i) {
    std::complex<double> z = solver.eigenvalues()(i);
    for (int step = 0; step < 2; ++step) {
      const std::complex<double> d = quartic_Q_prime(p, z);
      // Repeated roots leave Newton without a usable slope; the
      // eigenvalue is already as good as it gets there.
      if (std::abs(d) < 1e-8 * (1.0 + std::norm(z))) break;
      z -= quartic_Q(p, z) / d;
    }
    roots[i] = z;
  }
  const double im_tol =
      1e-9 * (1.0 + std::abs(p.p0) + std::abs(p.q0) + std::abs(p.rho));
  for (auto& z : roots) {
    if (std::abs(z.imag()) <= im_tol) z = {z.real(), 0.0};
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    const bool ra = a.imag() == 0.0, rb = b.imag() == 0.0;
    if (ra != rb) return ra;
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() > b.imag();
  });
  return roots;
}

std::string to_string(QuarticCase c) {
  switch (c) {
    case QuarticCase::Trivial: return "trivial";
    case QuarticCase::NegDelta: return "neg_delta";
    case QuarticCase::PosDeltaLow: return "pos_delta_low";
    case QuarticCase::PosDeltaHigh: return "pos_delta_high";
    case QuarticCase::ZeroDeltaMuPos: return "zero_delta_mu_pos";
    case QuarticCase::ZeroDeltaMuNegRight: return "zero_delta_mu_neg_right";
    case QuarticCase::ZeroDeltaMuNegLeft: return "zero_delta_mu_neg_left";
    case QuarticCase::ZeroDeltaCubic: return "zero_delta_cubic";
  }
  return "unknown";
}

TrajectoryFamily family_of(QuarticCase c) {
  switch (c) {
    case QuarticCase::Trivial: return TrajectoryFamily::Trivial;
    case QuarticCase::NegDelta: return TrajectoryFamily::NegDelta;
    case QuarticCase::PosDeltaLow: return TrajectoryFamily::PosDeltaLow;
    case QuarticCase::PosDeltaHigh: return TrajectoryFamily::PosDeltaHigh;
    case QuarticCase::ZeroDeltaMuPos: return TrajectoryFamily::ZeroDeltaMuPos;
    case QuarticCase::ZeroDeltaMuNegRight:
      return TrajectoryFamily::ZeroDeltaMuNegRight;
    case QuarticCase::ZeroDeltaMuNegLeft:
      return TrajectoryFamily::ZeroDeltaMuNegLeft;
    case QuarticCase::ZeroDeltaCubic: return TrajectoryFamily::ZeroDeltaCubic;
  }
  return TrajectoryFamily::Trivial;
}

namespace {

void classify_neg_delta(QuarticAnalysis& a) {
  std::array<std::complex<double>, 4> roots = a.roots;
  std::sort(roots.begin(), roots.end(), [](const auto& u, const auto& v) {
    return std::abs(u.imag()) < std::abs(v.imag());
  });
  a.r1 = std::min(roots[0].real(), roots[1].real());
  a.r4 = std::max(roots[0].real(), roots[1].real());
  a.r2 = a.r3 = std::numeric_limits<double>::quiet_NaN();
  // The conjugate pair follows from the real pair: its sum is -(r1+r4)
  // and its product is fixed by the second symmetric function.
  const double m = -0.5 * (a.r1 + a.r4);
  const double prod =
      2.0 * a.params.p0 + a.r1 * a.r1 + a.r4 * a.r4 + a.r1 * a.r4;
  const double nu = std::sqrt(std::max(prod - m * m, 0.0));
  a.complex_pair = {m, nu};
  const double sum2 = (a.r1 + a.r4) * (a.r1 + a.r4);
  a.delta1 =
      std::sqrt(std::max(2.0 * a.params.p0 + 2.0 * a.r1 * a.r1 + sum2, 0.0));
  a.delta4 =
      std::sqrt(std::max(2.0 * a.params.p0 + 2.0 * a.r4 * a.r4 + sum2, 0.0));
  const double span = a.r4 - a.r1;
  const double dd = a.delta4 - a.delta1;
  a.k = std::sqrt(std::max(span * span - dd * dd, 0.0) /
                  (4.0 * a.delta1 * a.delta4));
  const double s = a.params.s;
  const double num = (a.r4 - s) * a.delta1 - (s - a.r1) * a.delta4;
  const double den = (a.r4 - s) * a.delta1 + (s - a.r1) * a.delta4;
  a.constant = inv_cn(clamp_unit(num / den), Modulus(a.k));
}

void classify_pos_delta(QuarticAnalysis& a) {
  a.r1 = a.roots[0].real();
  a.r2 = a.roots[1].real();
  a.r3 = a.roots[2].real();
  a.r4 = a.roots[3].real();
  a.k1 = std::sqrt((a.r4 - a.r3) * (a.r2 - a.r1) /
                   ((a.r4 - a.r2) * (a.r3 - a.r1)));
  const double s = a.params.s;
  const double slack = 1e-10 * (1.0 + std::abs(a.r4 - a.r1));
  const Modulus k1(a.k1);
  if (s >= a.r1 - slack && s <= a.r2 + slack) {
    a.kind = QuarticCase::PosDeltaLow;
    const double ratio =
        (a.r4 - a.r2) * (s - a.r1) / ((a.r2 - a.r1) * (a.r4 - s));
    a.constant = inv_sn(std::sqrt(std::clamp(ratio, 0.0, 1.0)), k1);
  } else if (s >= a.r3 - slack && s <= a.r4 + slack) {
    a.kind = QuarticCase::PosDeltaHigh;
    const double ratio =
        (a.r3 - a.r1) * (a.r4 - s) / ((a.r4 - a.r3) * (s - a.r1));
    a.constant = inv_sn(std::sqrt(std::clamp(ratio, 0.0, 1.0)), k1);
  } else {
    std::ostringstream os;
    os << "classify: s = " << s << " lies in no admissible root interval ["
       << a.r1 << ", " << a.r2 << "] u [" << a.r3 << ", " << a.r4 << "]";
    throw ClassificationError(os.str());
  }
}

void classify_zero_delta(QuarticAnalysis& a, double tol) {
  const ReducedParams& p = a.params;
  const double s = p.s;

  // Triple root first: detected through p0^2 + 3 q0, which is computed
  // directly from the input data and stays well conditioned where the
  // critical points themselves coalesce.
  const double num = p.p0 * p.p0 + 3.0 * p.q0;
  const double num_scale = 1.0 + p.p0 * p.p0 + 3.0 * std::abs(p.q0);
  if (std::abs(num) <= std::sqrt(tol) * num_scale) {
    // The quartic is (eta - r)^3 (eta + 3r) with r^3 = -rho.
    a.kind = QuarticCase::ZeroDeltaCubic;
    const double r = -std::cbrt(p.rho);
    a.double_root = r;
    a.mu = 0.0;
    a.r1 = a.r4 = r;
    a.r2 = std::min(r, -3.0 * r);
    a.r3 = std::max(r, -3.0 * r);
    a.constant = (1.0 / r) * std::sqrt(std::max((3.0 * r + s) / (r - s), 0.0));
    return;
  }

  // Double root: the real critical point where the quartic vanishes.
  // The rational expression r = 2 rho (p0^2+3 q0)/(p0^3 - p0 q0 +
  // 36 rho^2) gives the same point but degenerates to 0/0 as the root
  // order rises, so the eigenvalue route is primary.
  const std::vector<double> candidates = critical_points(p);
  double r = candidates.front();
  double best = std::abs(quartic_Q(p, r));
  for (const double c : candidates) {
    const double q = std::abs(quartic_Q(p, c));
    if (q < best) {
      best = q;
      r = c;
    }
  }
  for (int step = 0; step < 2; ++step) {
    const double d2 = 12.0 * r * r + 4.0 * p.p0;
    if (std::abs(d2) < 1e-10 * (1.0 + r * r + std::abs(p.p0))) break;
    r -= quartic_Q_prime(p, {r, 0.0}).real() / d2;
  }
  const double q_scale = 1.0 + p.p0 * p.p0 + std::abs(p.q0) +
                         std::abs(p.rho) * std::abs(p.rho);
  if (std::abs(quartic_Q(p, r).real()) > 100.0 * std::sqrt(tol) * q_scale) {
    std::ostringstream os;
    os << "classify: discriminant is numerically zero but no critical "
          "point is a root (best residual "
       << quartic_Q(p, r).real() << " at eta = " << r << ", p0 = " << p.p0
       << ", q0 = " << p.q0 << ", rho = " << p.rho << ")";
    throw ClassificationError(os.str());
  }
  a.double_root = r;
  a.mu = 0.5 * (p.p0 + 3.0 * r * r);

  const double spread = std::sqrt(std::max(-2.0 * (p.p0 + r * r), 0.0));
  a.r1 = a.r4 = r;
  a.r2 = -r - spread;
  a.r3 = -r + spread;
  const double rm = std::sqrt(std::max(r * r - a.mu, 0.0));
  if (a.mu > 0.0) {
    a.kind = QuarticCase::ZeroDeltaMuPos;
    a.constant = std::acos(clamp_unit((-2.0 * a.mu / (s - r) - r) / rm));
  } else if (s > r) {
    // Hyperbolic phase signs are fixed by x'(0) = x0 >= 0: the turning
    // point above the double root lies ahead of t = 0, the one below it
    // behind.
    a.kind = QuarticCase::ZeroDeltaMuNegRight;
    const double inner = (-2.0 * a.mu / (s - r) - r) / rm;
    a.constant = -std::acosh(std::max(inner, 1.0));
  } else if (s < r) {
    a.kind = QuarticCase::ZeroDeltaMuNegLeft;
    const double inner = (2.0 * a.mu / (s - r) + r) / rm;
    a.constant = std::acosh(std::max(inner, 1.0));
  } else {
    std::ostringstream os;
    os << "classify: start point coincides with the repeated root (s = " << s
       << ", mu = " << a.mu << ") but the data is not degenerate";
    throw ClassificationError(os.str());
  }
}

}  // namespace

QuarticAnalysis classify(const InitialVelocity& ic, double rho, double tol) {
  QuarticAnalysis a;
  a.params = reduced_params(ic, rho);
  a.delta = discriminant(a.params);
  if (a.params.trivial) {
    a.kind = QuarticCase::Trivial;
    return a;
  }
  a.roots = quartic_roots(a.params);

  const double p6 = std::pow(std::abs(a.params.p0), 6);
  const double q3 = std::pow(std::abs(a.params.q0), 3);
  const double threshold = tol * (1.0 + p6 + q3);
  if (std::abs(a.delta) <= threshold) {
    classify_zero_delta(a, tol);
  } else if (a.delta < 0.0) {
    a.kind = QuarticCase::NegDelta;
    classify_neg_delta(a);
  } else {
    classify_pos_delta(a);
  }
  return a;
}

}  // namespace heis
