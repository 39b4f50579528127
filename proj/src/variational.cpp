#include "heis/variational.hpp"

#include <cmath>

namespace heis {

namespace {

// Fallback gradient for coefficient functions supplied without one.
// The step sits above the noise floor of coefficients that are
// themselves finite-difference quotients (gauge perturbations).
std::array<double, 3> fd_gradient(
    const std::function<double(const GroupElement&)>& f,
    const GroupElement& p) {
  constexpr double h = 1e-4;
  std::array<double, 3> g;
  g[0] = (f({p.x + h, p.y, p.z}) - f({p.x - h, p.y, p.z})) / (2.0 * h);
  g[1] = (f({p.x, p.y + h, p.z}) - f({p.x, p.y - h, p.z})) / (2.0 * h);
  g[2] = (f({p.x, p.y, p.z + h}) - f({p.x, p.y, p.z - h})) / (2.0 * h);
  return g;
}

std::array<double, 3> gradient(
    const std::function<std::array<double, 3>(const GroupElement&)>& grad,
    const std::function<double(const GroupElement&)>& f,
    const GroupElement& p) {
  return grad ? grad(p) : fd_gradient(f, p);
}

// Momentum dL/dq' with w = z' + (x'y - xy')/2.
std::array<double, 3> momentum(const LagrangianSpec& spec,
                               const TrajectoryState& s) {
  const GroupElement p = s.position();
  const double w = s.zp + 0.5 * (s.xp * s.y - s.x * s.yp);
  return {s.xp + 0.5 * w * s.y - spec.theta.f1(p),
          s.yp - 0.5 * w * s.x - spec.theta.f2(p),
          w - spec.theta.f3(p)};
}

std::array<double, 3> position_gradient(const LagrangianSpec& spec,
                                        const TrajectoryState& s) {
  const GroupElement p = s.position();
  const double w = s.zp + 0.5 * (s.xp * s.y - s.x * s.yp);
  const auto g1 = gradient(spec.theta.grad1, spec.theta.f1, p);
  const auto g2 = gradient(spec.theta.grad2, spec.theta.f2, p);
  const auto g3 = gradient(spec.theta.grad3, spec.theta.f3, p);
  std::array<double, 3> out;
  for (int i = 0; i < 3; ++i) {
    const double dtheta = g1[i] * s.xp + g2[i] * s.yp + g3[i] * s.zp;
    out[i] = -dtheta;
  }
  out[0] += -0.5 * w * s.yp;
  out[1] += 0.5 * w * s.xp;
  return out;
}

}  // namespace

OneForm default_theta(const LorentzForce& f) {
  const double beta = f.beta, alpha = f.alpha, rho = f.rho;
  OneForm theta;
  theta.f1 = [rho, beta](const GroupElement& p) {
    return -0.5 * rho * p.y + 0.5 * beta * p.x * p.y;
  };
  theta.f2 = [rho, alpha](const GroupElement& p) {
    return 0.5 * rho * p.x - 0.5 * alpha * p.x * p.y;
  };
  theta.f3 = [rho, beta, alpha](const GroupElement& p) {
    return rho + beta * p.x + alpha * p.y;
  };
  theta.grad1 = [rho, beta](const GroupElement& p) {
    return std::array<double, 3>{0.5 * beta * p.y,
                                 -0.5 * rho + 0.5 * beta * p.x, 0.0};
  };
  theta.grad2 = [rho, alpha](const GroupElement& p) {
    return std::array<double, 3>{0.5 * rho - 0.5 * alpha * p.y,
                                 -0.5 * alpha * p.x, 0.0};
  };
  theta.grad3 = [beta, alpha](const GroupElement&) {
    return std::array<double, 3>{beta, alpha, 0.0};
  };
  return theta;
}

bool theta_check(const OneForm& theta, const LorentzForce& f,
                 ThetaDiagnostics* diag) {
  constexpr double tol = 1e-6;
  // Fixed low-discrepancy-ish cloud; randomness adds nothing here.
  ThetaDiagnostics local;
  bool ok = true;
  for (int i = 0; i < 40; ++i) {
    const double u = static_cast<double>(i) + 1.0;
    const GroupElement p{2.0 * std::sin(2.39996322972865 * u),
                         2.0 * std::cos(1.32471795724474 * u),
                         1.5 * std::sin(0.7548776662466927 * u + 0.3)};
    const auto g1 = gradient(theta.grad1, theta.f1, p);
    const auto g2 = gradient(theta.grad2, theta.f2, p);
    const auto g3 = gradient(theta.grad3, theta.f3, p);
    const double c12 = g2[0] - g1[1] -
                       (f.rho - 0.5 * f.beta * p.x - 0.5 * f.alpha * p.y);
    const double c13 = g3[0] - g1[2] - f.beta;
    const double c23 = g3[1] - g2[2] - f.alpha;
    const std::array<double, 3> c{c12, c13, c23};
    for (int j = 0; j < 3; ++j) {
      if (std::abs(c[j]) > local.max_violation) {
        local.max_violation = std::abs(c[j]);
        local.worst_point = p;
        local.worst_condition = j + 1;
      }
      if (std::abs(c[j]) > tol) ok = false;
    }
  }
  if (diag) *diag = local;
  return ok;
}

LagrangianSpec make_lagrangian(const LorentzForce& f) {
  return {f, default_theta(f)};
}

double lagrangian_eval(const LagrangianSpec& spec,
                       const TrajectoryState& s) {
  const GroupElement p = s.position();
  const double w = s.zp + 0.5 * (s.xp * s.y - s.x * s.yp);
  const double kinetic = 0.5 * (s.xp * s.xp + s.yp * s.yp + w * w);
  return kinetic - (spec.theta.f1(p) * s.xp + spec.theta.f2(p) * s.yp +
                    spec.theta.f3(p) * s.zp);
}

std::array<double, 3> el_residual(const LagrangianSpec& spec,
                                  const Trajectory& traj, double t) {
  constexpr double h = 1e-5;
  const auto mp = momentum(spec, traj(t + h));
  const auto mm = momentum(spec, traj(t - h));
  const auto dq = position_gradient(spec, traj(t));
  return {(mp[0] - mm[0]) / (2.0 * h) - dq[0],
          (mp[1] - mm[1]) / (2.0 * h) - dq[1],
          (mp[2] - mm[2]) / (2.0 * h) - dq[2]};
}

}  // namespace heis
