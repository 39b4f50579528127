#include "heis/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace heis {

namespace {

using Real = long double;

void validate(const IntegrationConfig& cfg) {
  if (!(cfg.t1 > cfg.t0))
    throw std::invalid_argument("integration: t1 must exceed t0");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw std::invalid_argument("integration: tolerances must be positive");
  if (cfg.samples < 2)
    throw std::invalid_argument("integration: need at least two samples");
}

// Adaptive Dormand-Prince 5(4) with FSAL and PI-free standard step
// control.  Steps are clipped to land exactly on the requested sample
// times.
template <std::size_t N, typename Rhs, typename Observer>
void dormand_prince(const Rhs& rhs, std::array<Real, N> y, double t0,
                    const std::vector<double>& targets, double rel_tol,
                    double abs_tol, std::size_t max_steps,
                    const Observer& observe) {
  static constexpr Real a21 = 1.0L / 5;
  static constexpr Real a31 = 3.0L / 40, a32 = 9.0L / 40;
  static constexpr Real a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
  static constexpr Real a51 = 19372.0L / 6561, a52 = -25360.0L / 2187,
                        a53 = 64448.0L / 6561, a54 = -212.0L / 729;
  static constexpr Real a61 = 9017.0L / 3168, a62 = -355.0L / 33,
                        a63 = 46732.0L / 5247, a64 = 49.0L / 176,
                        a65 = -5103.0L / 18656;
  static constexpr Real b1 = 35.0L / 384, b3 = 500.0L / 1113,
                        b4 = 125.0L / 192, b5 = -2187.0L / 6784,
                        b6 = 11.0L / 84;
  static constexpr Real e1 = 71.0L / 57600, e3 = -71.0L / 16695,
                        e4 = 71.0L / 1920, e5 = -17253.0L / 339200,
                        e6 = 22.0L / 525, e7 = -1.0L / 40;
  static constexpr Real c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5,
                        c5 = 8.0L / 9;

  Real t = t0;
  std::array<Real, N> k1 = rhs(t, y), k2{}, k3{}, k4{}, k5{}, k6{}, k7{};
  std::array<Real, N> tmp{}, ynew{};
  std::size_t steps = 0;

  std::size_t target_index = 0;
  if (!targets.empty() && targets[0] == t0) {
    observe(t0, y);
    ++target_index;
  }

  Real h = 1e-4L;
  while (target_index < targets.size()) {
    const Real target = targets[target_index];
    Real h_try = h;
    bool clipped = false;
    if (t + h_try >= target) {
      h_try = target - t;
      clipped = true;
    }
    if (++steps > max_steps)
      throw NumericalError("ode integration exceeded the step budget");
    // A clipped landing step may be arbitrarily short; only the natural
    // step degenerating signals failure.
    if (!clipped && h_try < 1e-14L * (1.0L + std::abs(t)))
      throw NumericalError("ode integration step size underflow");

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h_try * a21 * k1[i];
    k2 = rhs(t + c2 * h_try, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h_try * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(t + c3 * h_try, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h_try * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(t + c4 * h_try, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h_try * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                               a54 * k4[i]);
    k5 = rhs(t + c5 * h_try, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h_try * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                               a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(t + h_try, tmp);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h_try * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                b5 * k5[i] + b6 * k6[i]);
    k7 = rhs(t + h_try, ynew);

    Real err = 0.0L;
    for (std::size_t i = 0; i < N; ++i) {
      const Real ei = h_try * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                               e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const Real sk = static_cast<Real>(abs_tol) +
                      static_cast<Real>(rel_tol) *
                          std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (ei / sk) * (ei / sk);
    }
    err = std::sqrt(err / static_cast<Real>(N));

    if (err <= 1.0L) {
      t += h_try;
      y = ynew;
      k1 = k7;  // FSAL
      if (clipped) {
        t = target;
        observe((double)t, y);
        ++target_index;
      }
    }
    // A clipped-and-accepted step says nothing about the natural step
    // size, so keep the previous h in that case.
    if (!clipped || err > 1.0L) {
      const double factor = std::clamp(
          0.9 * std::pow(std::max((double)err, 1e-10), -0.2), 0.2, 5.0);
      h = h_try * static_cast<Real>(factor);
    }
  }
}

std::vector<double> sample_grid(const IntegrationConfig& cfg) {
  std::vector<double> t(cfg.samples);
  const double h = (cfg.t1 - cfg.t0) / static_cast<double>(cfg.samples - 1);
  for (std::size_t i = 0; i < cfg.samples; ++i)
    t[i] = cfg.t0 + h * static_cast<double>(i);
  t.back() = cfg.t1;
  return t;
}

double eqonev_value(const LorentzForce& f, const InitialVelocity& ic,
                    const TrajectoryState& s) {
  const bool canonical =
      std::abs(f.beta - 1.0) <= 1e-12 && std::abs(f.alpha) <= 1e-12;
  if (canonical) {
    const double sh = ic.z0 + f.rho;
    const double h = 0.5 * s.x * s.x + sh * s.x + ic.y0 + 1.0;
    return s.xp * s.xp + h * h - 2.0 * f.rho * s.x;
  }
  // General left-invariant force: (x'-alpha)^2 + (y'+beta)^2 - 2 rho w
  // is conserved, and reduces to the canonical expression above.
  const double w = s.zp + 0.5 * (s.xp * s.y - s.x * s.yp);
  const double u = s.xp - f.alpha;
  const double v = s.yp + f.beta;
  return u * u + v * v - 2.0 * f.rho * w;
}

InvariantReport report_from_states(const std::vector<double>& t,
                                   const std::vector<TrajectoryState>& st,
                                   const LorentzForce& f,
                                   const InitialVelocity& ic) {
  InvariantReport rep;
  const double speed0 =
      norm(left_frame_velocity(st[0].position(), st[0].velocity()));
  const double fi0 = eqonev_value(f, ic, st[0]);
  for (const TrajectoryState& s : st) {
    const double sp = norm(left_frame_velocity(s.position(), s.velocity()));
    rep.speed_drift = std::max(rep.speed_drift, std::abs(sp - speed0));
    rep.first_integral_drift = std::max(
        rep.first_integral_drift, std::abs(eqonev_value(f, ic, s) - fi0));
  }
  // Magnetic-equation residuals; second derivatives by interior central
  // differences of the sampled velocities.
  for (std::size_t i = 1; i + 1 < st.size(); ++i) {
    const double h2 = t[i + 1] - t[i - 1];
    const double xpp = (st[i + 1].xp - st[i - 1].xp) / h2;
    const double ypp = (st[i + 1].yp - st[i - 1].yp) / h2;
    const double zpp = (st[i + 1].zp - st[i - 1].zp) / h2;
    const TrajectoryState& s = st[i];
    const double w = s.zp + 0.5 * (s.xp * s.y - s.x * s.yp);
    const double r1 = xpp + (w + f.rho) * (s.yp + f.beta) - f.rho * f.beta;
    const double r2 = ypp - (w + f.rho) * (s.xp - f.alpha) - f.rho * f.alpha;
    const double r3 =
        zpp + 0.5 * (xpp * s.y - s.x * ypp) - (f.beta * s.xp + f.alpha * s.yp);
    rep.ode_residual_max = std::max(
        {rep.ode_residual_max, std::abs(r1), std::abs(r2), std::abs(r3)});
  }
  return rep;
}

}  // namespace

SampledTrajectory integrate_full(const LorentzForce& f,
                                 const InitialVelocity& ic,
                                 const IntegrationConfig& cfg) {
  validate(cfg);
  const Real beta = f.beta, alpha = f.alpha, rho = f.rho;
  auto rhs = [beta, alpha, rho](Real, const std::array<Real, 6>& u) {
    const Real x = u[0], y = u[1], xp = u[3], yp = u[4], w = u[5];
    return std::array<Real, 6>{
        xp,
        yp,
        w - 0.5L * (xp * y - x * yp),
        rho * beta - (w + rho) * (yp + beta),
        rho * alpha + (w + rho) * (xp - alpha),
        beta * xp + alpha * yp};
  };
  SampledTrajectory out;
  out.force = f;
  out.ic = ic;
  out.t = sample_grid(cfg);
  out.state.reserve(out.t.size());
  const std::array<Real, 6> y0{0.0L, 0.0L, 0.0L, ic.x0, ic.y0, ic.z0};
  dormand_prince<6>(
      rhs, y0, cfg.t0, out.t, cfg.rel_tol, cfg.abs_tol, cfg.max_steps,
      [&out](double, const std::array<Real, 6>& u) {
        const double x = (double)u[0], y = (double)u[1], z = (double)u[2];
        const double xp = (double)u[3], yp = (double)u[4], w = (double)u[5];
        out.state.push_back(
            {x, y, z, xp, yp, w - 0.5 * (xp * y - x * yp)});
      });
  return out;
}

SampledScalar integrate_reduced(const InitialVelocity& ic, double rho,
                                const IntegrationConfig& cfg) {
  validate(cfg);
  const Real s = ic.z0 + rho;
  const Real y0 = ic.y0;
  const Real rrho = rho;
  auto rhs = [s, y0, rrho](Real, const std::array<Real, 2>& u) {
    const Real x = u[0];
    const Real h = 0.5L * x * x + s * x + y0 + 1.0L;
    return std::array<Real, 2>{u[1], rrho - (x + s) * h};
  };
  SampledScalar out;
  out.t = sample_grid(cfg);
  out.x.reserve(out.t.size());
  out.xp.reserve(out.t.size());
  dormand_prince<2>(rhs, {0.0L, (Real)ic.x0}, cfg.t0, out.t, cfg.rel_tol,
                    cfg.abs_tol, cfg.max_steps,
                    [&out](double, const std::array<Real, 2>& u) {
                      out.x.push_back((double)u[0]);
                      out.xp.push_back((double)u[1]);
                    });
  return out;
}

InvariantReport monitor_invariants(const Trajectory& traj,
                                   const LorentzForce& f, double t0,
                                   double t1, std::size_t n) {
  // Velocities are available analytically, so second derivatives come
  // from a fourth-order five-point stencil whose truncation and
  // round-off both sit well below the residual tolerances.
  const double fd = 1e-3;
  std::vector<double> t(n);
  std::vector<TrajectoryState> st(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = t0 + (t1 - t0) * static_cast<double>(i) /
                    static_cast<double>(n - 1);
    st[i] = traj(t[i]);
  }
  InvariantReport rep =
      report_from_states(t, st, f, traj.initial_velocity());
  rep.ode_residual_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const TrajectoryState sm2 = traj(t[i] - 2.0 * fd);
    const TrajectoryState sm = traj(t[i] - fd);
    const TrajectoryState sp = traj(t[i] + fd);
    const TrajectoryState sp2 = traj(t[i] + 2.0 * fd);
    const TrajectoryState& s = st[i];
    auto d4 = [fd](double m2, double m1, double p1, double p2) {
      return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * fd);
    };
    const double xpp = d4(sm2.xp, sm.xp, sp.xp, sp2.xp);
    const double ypp = d4(sm2.yp, sm.yp, sp.yp, sp2.yp);
    const double zpp = d4(sm2.zp, sm.zp, sp.zp, sp2.zp);
    const double w = s.zp + 0.5 * (s.xp * s.y - s.x * s.yp);
    const double r1 = xpp + (w + f.rho) * (s.yp + f.beta) - f.rho * f.beta;
    const double r2 = ypp - (w + f.rho) * (s.xp - f.alpha) - f.rho * f.alpha;
    const double r3 =
        zpp + 0.5 * (xpp * s.y - s.x * ypp) - (f.beta * s.xp + f.alpha * s.yp);
    rep.ode_residual_max = std::max(
        {rep.ode_residual_max, std::abs(r1), std::abs(r2), std::abs(r3)});
  }
  return rep;
}

InvariantReport monitor_invariants(const SampledTrajectory& samples,
                                   const LorentzForce& f) {
  return report_from_states(samples.t, samples.state, f, samples.ic);
}

bool geodesic_magnetic_classifier(const LorentzForce& f,
                                  const InitialVelocity& ic) {
  if (is_zero(f))
    throw std::invalid_argument(
        "geodesic_magnetic_classifier: zero force (every trajectory is a "
        "geodesic)");
  constexpr double kAngularTol = 1e-10;
  const double nu = std::hypot(f.beta, f.alpha);
  const double nv = std::sqrt(ic.x0 * ic.x0 + ic.y0 * ic.y0 + ic.z0 * ic.z0);
  if (nv == 0.0) return true;  // the constant curve
  if (nu <= 1e-12) {
    // Exact force: only the centre line.
    return std::hypot(ic.x0, ic.y0) <= kAngularTol * nv;
  }
  if (std::abs(f.rho) <= 1e-12) {
    // ker F = span{J U}: project the velocity off that line.
    const double j1 = -f.alpha / nu, j2 = f.beta / nu;
    const double along = ic.x0 * j1 + ic.y0 * j2;
    const double off = std::sqrt(std::max(
        ic.x0 * ic.x0 + ic.y0 * ic.y0 - along * along + ic.z0 * ic.z0, 0.0));
    return off <= kAngularTol * nv;
  }
  return false;  // mixed force: kernel meets neither factor
}

}  // namespace heis
