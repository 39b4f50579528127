#include "heis/solver.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "heis/elliptic.hpp"
#include "heis/quadrature.hpp"
#include "heis/symmetry.hpp"

namespace heis {

namespace {

// u - sin(u), series below the cancellation regime.
double t_minus_sin(double u) {
  if (std::abs(u) < 1e-3) {
    const double u2 = u * u;
    return u * u2 * (1.0 / 6.0 - u2 * (1.0 / 120.0 - u2 / 5040.0));
  }
  return u - std::sin(u);
}

// 1 - cos(u) without cancellation.
double one_minus_cos(double u) {
  const double s = std::sin(0.5 * u);
  return 2.0 * s * s;
}

double reduce_period(double t, double period) {
  return t - period * std::round(t / period);
}

ReducedSolution solve_neg_delta(const QuarticAnalysis& a) {
  const double s = a.params.s;
  const double omega = 0.5 * std::sqrt(a.delta1 * a.delta4);
  const double am = a.r1 * a.delta4 - a.r4 * a.delta1;
  const double bm = a.r1 * a.delta4 + a.r4 * a.delta1;
  const double cm = a.delta4 - a.delta1;
  const double dm = a.delta1 + a.delta4;
  const double moebius_det = 2.0 * a.delta1 * a.delta4 * (a.r1 - a.r4);
  const Modulus k(a.k);
  const double period = 4.0 * ellip_K(k) / omega;
  const double c1 = a.constant;
  auto x = [=](double t) {
    const double arg = omega * reduce_period(t, period) + c1;
    const JacobiValues j = jacobi_sncndn(arg, k);
    return (am * j.cn + bm) / (cm * j.cn + dm) - s;
  };
  auto dx = [=](double t) {
    const double arg = omega * reduce_period(t, period) + c1;
    const JacobiValues j = jacobi_sncndn(arg, k);
    const double den = cm * j.cn + dm;
    return moebius_det * (-j.sn * j.dn * omega) / (den * den);
  };
  return {x, dx};
}

ReducedSolution solve_pos_delta(const QuarticAnalysis& a, bool high) {
  const double s = a.params.s;
  const double omega = 0.25 * std::sqrt((a.r4 - a.r2) * (a.r3 - a.r1));
  const Modulus k1(a.k1);
  const double period = 2.0 * ellip_K(k1) / omega;
  const double c = high ? (a.r4 - a.r3) / (a.r3 - a.r1)
                        : (a.r2 - a.r1) / (a.r4 - a.r2);
  const double base = high ? a.r1 : a.r4;
  const double amp = high ? (a.r4 - a.r1) : -(a.r4 - a.r1);
  const double phase = high ? -a.constant : a.constant;
  auto x = [=](double t) {
    const double arg = omega * reduce_period(t, period) + phase;
    const JacobiValues j = jacobi_sncndn(arg, k1);
    return base + amp / (1.0 + c * j.sn * j.sn) - s;
  };
  auto dx = [=](double t) {
    const double arg = omega * reduce_period(t, period) + phase;
    const JacobiValues j = jacobi_sncndn(arg, k1);
    const double den = 1.0 + c * j.sn * j.sn;
    return -amp * 2.0 * c * j.sn * j.cn * j.dn * omega / (den * den);
  };
  return {x, dx};
}

ReducedSolution solve_mu_pos(const QuarticAnalysis& a) {
  const double s = a.params.s;
  const double r = a.double_root;
  const double mu = a.mu;
  const double rm = std::sqrt(std::max(r * r - mu, 0.0));
  const double omega = std::sqrt(mu);
  const double period = 2.0 * std::numbers::pi / omega;
  const double c4 = a.constant;
  auto x = [=](double t) {
    const double arg = omega * reduce_period(t, period) - c4;
    return -2.0 * mu / (r + rm * std::cos(arg)) + r - s;
  };
  auto dx = [=](double t) {
    const double arg = omega * reduce_period(t, period) - c4;
    const double den = r + rm * std::cos(arg);
    return 2.0 * mu * (-rm * omega * std::sin(arg)) / (den * den);
  };
  return {x, dx};
}

ReducedSolution solve_mu_neg(const QuarticAnalysis& a, bool right) {
  const double s = a.params.s;
  const double r = a.double_root;
  const double mu = a.mu;
  const double rm = std::sqrt(r * r - mu);
  const double lambda = std::sqrt(-mu);
  const double sign = right ? 1.0 : -1.0;  // D = r +/- rm cosh
  const double c = a.constant;
  auto x = [=](double t) {
    const double arg = lambda * t + c;
    if (std::abs(arg) > 350.0) return r - s;  // cosh overflow: at the limit
    const double den = r + sign * rm * std::cosh(arg);
    return -2.0 * mu / den + r - s;
  };
  auto dx = [=](double t) {
    const double arg = lambda * t + c;
    if (std::abs(arg) > 350.0) return 0.0;
    const double den = r + sign * rm * std::cosh(arg);
    return 2.0 * mu * sign * rm * lambda * std::sinh(arg) / (den * den);
  };
  return {x, dx};
}

ReducedSolution solve_cubic(const QuarticAnalysis& a) {
  const double s = a.params.s;
  const double r = a.double_root;
  const double c7 = a.constant;
  auto x = [=](double t) {
    const double u = t + c7;
    const double den = 1.0 + r * r * u * u;
    return -4.0 * r / den + r - s;
  };
  auto dx = [=](double t) {
    const double u = t + c7;
    const double den = 1.0 + r * r * u * u;
    return 8.0 * r * r * r * u / (den * den);
  };
  return {x, dx};
}

}  // namespace

ReducedSolution solve_x(const QuarticAnalysis& analysis) {
  switch (analysis.kind) {
    case QuarticCase::Trivial:
      return {[](double) { return 0.0; }, [](double) { return 0.0; }};
    case QuarticCase::NegDelta:
      return solve_neg_delta(analysis);
    case QuarticCase::PosDeltaLow:
      return solve_pos_delta(analysis, false);
    case QuarticCase::PosDeltaHigh:
      return solve_pos_delta(analysis, true);
    case QuarticCase::ZeroDeltaMuPos:
      return solve_mu_pos(analysis);
    case QuarticCase::ZeroDeltaMuNegRight:
      return solve_mu_neg(analysis, true);
    case QuarticCase::ZeroDeltaMuNegLeft:
      return solve_mu_neg(analysis, false);
    case QuarticCase::ZeroDeltaCubic:
      return solve_cubic(analysis);
  }
  throw std::logic_error("solve_x: unhandled case");
}

Reconstruction reconstruct_yz(const ReducedSolution& x,
                              const InitialVelocity& ic, double rho,
                              std::optional<double> period, double span) {
  const double s = ic.z0 + rho;
  const double y0 = ic.y0;
  auto integrand = [xf = x.x, s, y0](double u) {
    const double v = xf(u);
    return 0.5 * v * v + s * v + y0;
  };
  auto anti = std::make_shared<CachedAntiderivative>(integrand, span, period);
  auto y = [anti](double t) { return (*anti)(t); };
  auto z = [xf = x.x, dxf = x.dx, y, s, x0 = ic.x0](double t) {
    const double xx = xf(t);
    return -0.5 * xx * y(t) - s * y(t) - dxf(t) + x0;
  };
  return {y, z};
}

std::pair<std::optional<double>, std::optional<Interval>> period_and_image(
    const QuarticAnalysis& a) {
  const double s = a.params.s;
  switch (a.kind) {
    case QuarticCase::Trivial:
      return {std::nullopt, Interval{0.0, 0.0, true, true}};
    case QuarticCase::NegDelta: {
      const double t = 8.0 * ellip_K(Modulus(a.k)) /
                       std::sqrt(a.delta1 * a.delta4);
      return {t, Interval{a.r1 - s, a.r4 - s, true, true}};
    }
    case QuarticCase::PosDeltaLow:
    case QuarticCase::PosDeltaHigh: {
      const double t = 8.0 * ellip_K(Modulus(a.k1)) /
                       std::sqrt((a.r4 - a.r2) * (a.r3 - a.r1));
      if (a.kind == QuarticCase::PosDeltaLow)
        return {t, Interval{a.r1 - s, a.r2 - s, true, true}};
      return {t, Interval{a.r3 - s, a.r4 - s, true, true}};
    }
    case QuarticCase::ZeroDeltaMuPos:
      return {2.0 * std::numbers::pi / std::sqrt(a.mu),
              Interval{a.r2 - s, a.r3 - s, true, true}};
    case QuarticCase::ZeroDeltaMuNegRight:
      return {std::nullopt,
              Interval{a.double_root - s, a.r3 - s, false, true}};
    case QuarticCase::ZeroDeltaMuNegLeft:
      return {std::nullopt,
              Interval{a.r2 - s, a.double_root - s, true, false}};
    case QuarticCase::ZeroDeltaCubic: {
      const double r = a.double_root;
      if (a.params.rho > 0.0)
        return {std::nullopt, Interval{r - s, -3.0 * r - s, false, true}};
      return {std::nullopt, Interval{-3.0 * r - s, r - s, true, false}};
    }
  }
  return {std::nullopt, std::nullopt};
}

namespace {

Trajectory assemble_canonical(const QuarticAnalysis& analysis) {
  const InitialVelocity ic = analysis.params.ic;
  const double rho = analysis.params.rho;
  const double s = analysis.params.s;
  const LorentzForce force{1.0, 0.0, rho};

  if (analysis.kind == QuarticCase::Trivial) {
    // One-parameter subgroup exp(t (y0 e2 + z0 e3)).
    auto eval = [ic](double t) {
      return TrajectoryState{0.0,   ic.y0 * t, ic.z0 * t,
                             0.0,   ic.y0,     ic.z0};
    };
    Trajectory out(eval, TrajectoryFamily::Trivial, force, ic);
    out.set_x_image(Interval{0.0, 0.0, true, true});
    return out;
  }

  const auto [period, image] = period_and_image(analysis);
  const ReducedSolution xs = solve_x(analysis);
  const Reconstruction yz = reconstruct_yz(xs, ic, rho, period);

  auto eval = [xs, yz, ic, rho, s](double t) {
    const double x = xs.x(t);
    const double dx = xs.dx(t);
    const double y = yz.y(t);
    const double yp = 0.5 * x * x + s * x + ic.y0;
    const double z = -0.5 * x * y - s * y - dx + ic.x0;
    // z' follows from differentiating the z formula; x'' is taken from
    // the reduced equation itself.
    const double xpp = rho - (x + s) * (yp + 1.0);
    const double zp = -0.5 * (dx * y + x * yp) - s * yp - xpp;
    return TrajectoryState{x, y, z, dx, yp, zp};
  };
  Trajectory out(eval, family_of(analysis.kind), force, ic);
  out.set_period(period);
  out.set_x_image(image);
  return out;
}

}  // namespace

Trajectory solve_canonical(const InitialVelocity& ic, double rho) {
  if (ic.x0 < 0.0) {
    const Trajectory mirrored =
        solve_canonical(InitialVelocity{-ic.x0, ic.y0, ic.z0}, rho);
    Trajectory out = act_on_curve(IsometryScaling{kReflectY, {}, -1.0},
                                  mirrored);
    out.set_x_image(mirrored.x_image());
    return out;
  }
  return assemble_canonical(classify(ic, rho));
}

Trajectory solve_exact(const InitialVelocity& ic, double rho) {
  const LorentzForce force{0.0, 0.0, rho};
  const TrajectoryFamily family =
      rho == 0.0 ? TrajectoryFamily::Geodesic : TrajectoryFamily::Exact;
  const double c = ic.z0 + rho;
  if (std::abs(c) <= 1e-30) {
    auto eval = [ic](double t) {
      return TrajectoryState{ic.x0 * t, ic.y0 * t, ic.z0 * t,
                             ic.x0,     ic.y0,     ic.z0};
    };
    return Trajectory(eval, family, force, ic);
  }
  const double v2 = ic.x0 * ic.x0 + ic.y0 * ic.y0;
  auto eval = [ic, c, v2](double t) {
    const double th = c * t;
    const double sn = std::sin(th);
    const double omc = one_minus_cos(th);
    const double x = (ic.x0 * sn - ic.y0 * omc) / c;
    const double y = (ic.x0 * omc + ic.y0 * sn) / c;
    const double z = ic.z0 * t + v2 / (2.0 * c * c) * t_minus_sin(th);
    const double xp = ic.x0 * std::cos(th) - ic.y0 * sn;
    const double yp = ic.x0 * sn + ic.y0 * std::cos(th);
    const double zp = ic.z0 + v2 / (2.0 * c) * omc;
    return TrajectoryState{x, y, z, xp, yp, zp};
  };
  Trajectory out(eval, family, force, ic);
  const double radius = std::sqrt(v2);
  if (radius > 0.0) {
    out.set_period(2.0 * std::numbers::pi / std::abs(c));
    const double lo = (-radius - ic.y0) / c;
    const double hi = (radius - ic.y0) / c;
    out.set_x_image(Interval{std::min(lo, hi), std::max(lo, hi), true, true});
  }
  return out;
}

Trajectory solve(const LorentzForce& f, const InitialVelocity& ic) {
  if (is_zero(f)) return solve_exact(ic, 0.0);
  if (std::hypot(f.beta, f.alpha) <= 1e-12) return solve_exact(ic, f.rho);
  const OrbitResult orbit = canonicalize(f);
  const IsometryScaling& w = orbit.witness;
  const bool identity_witness = w.B.a11 == 1.0 && w.B.a12 == 0.0 &&
                                w.B.a21 == 0.0 && w.B.a22 == 1.0 &&
                                w.r == 1.0;
  if (identity_witness) return solve_canonical(ic, f.rho);
  const AlgebraVector pushed =
      push_velocity(w, AlgebraVector{ic.x0, ic.y0, ic.z0});
  const InitialVelocity transformed{w.r * pushed.c1, w.r * pushed.c2,
                                    w.r * pushed.c3};
  const Trajectory sigma =
      solve_canonical(transformed, orbit.canonical.rho);
  // The mapped-back curve keeps its period (rescaled inside the curve
  // action); the x-image only survives when the horizontal part of the
  // map fixes the first coordinate, which it does not here.
  return act_on_curve(inverse(w), sigma);
}

}  // namespace heis
