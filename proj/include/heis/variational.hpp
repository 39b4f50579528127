#ifndef HEIS_VARIATIONAL_HPP
#define HEIS_VARIATIONAL_HPP

#include <array>
#include <functional>

#include "heis/algebra.hpp"
#include "heis/trajectory.hpp"

// The variational description of the magnetic flow.  Every
// left-invariant closed 2-form on H3 is exact, omega_F = d theta, and
// the trajectories for F are the extremals of L = T - theta(v) with
// kinetic energy T = (x'^2 + y'^2 + (z' + (x'y - xy')/2)^2)/2.

namespace heis {

// theta = f1 dx + f2 dy + f3 dz with smooth coefficients.  Analytic
// gradients are optional; when absent, central differences are used.
struct OneForm {
  std::function<double(const GroupElement&)> f1, f2, f3;
  std::function<std::array<double, 3>(const GroupElement&)> grad1, grad2,
      grad3;
};

// The potential
//   theta = (-rho y/2 + beta xy/2) dx + (rho x/2 - alpha xy/2) dy
//           + (rho + beta x + alpha y) dz,
// left-invariant exactly when alpha = beta = 0.
OneForm default_theta(const LorentzForce& f);

struct ThetaDiagnostics {
  double max_violation{0.0};
  GroupElement worst_point{};
  int worst_condition{0};
};

// Verifies d theta = omega_F through the three curl conditions
//   d f2/dx - d f1/dy = rho - beta x/2 - alpha y/2,
//   d f3/dx - d f1/dz = beta,
//   d f3/dy - d f2/dz = alpha
// on a fixed cloud of sample points, each to 1e-6.
bool theta_check(const OneForm& theta, const LorentzForce& f,
                 ThetaDiagnostics* diag = nullptr);

struct LagrangianSpec {
  LorentzForce force;
  OneForm theta;
};

LagrangianSpec make_lagrangian(const LorentzForce& f);

// L at a tangent vector: T(state) - theta(velocity).
double lagrangian_eval(const LagrangianSpec& spec,
                       const TrajectoryState& state);

// Euler-Lagrange residuals d/dt (dL/dq') - dL/dq at time t; the
// momentum derivative is a central difference with step 1e-5, all other
// partials are analytic (or analytic-in-T with finite-difference theta
// gradients when the form carries none).
std::array<double, 3> el_residual(const LagrangianSpec& spec,
                                  const Trajectory& traj, double t);

}  // namespace heis

#endif  // HEIS_VARIATIONAL_HPP
