#ifndef HEIS_ORACLE_HPP
#define HEIS_ORACLE_HPP

#include <cstddef>
#include <vector>

#include "heis/quadrature.hpp"
#include "heis/trajectory.hpp"

// Independent numerical integration of the magnetic systems and
// invariant monitors.  The integrator is an adaptive Dormand-Prince
// 5(4) pair running in extended precision: the repeated-root families
// pass a saddle point of the reduced equation, where local integration
// error is amplified by exp(sqrt(-mu) t), and double-precision arithmetic
// would not leave headroom under the cross-validation tolerances.
//
// The full system is integrated in the variables (x, y, z, x', y', w)
// with w = z' + (x'y - xy')/2, the central velocity in the left frame;
// the conserved quantities are then algebraic in the state.

namespace heis {

// Default tolerances are tight enough that the first integral of the
// reduced flow drifts below 1e-10 over a 50-unit horizon; the extended
// precision arithmetic keeps the controller meaningful at this level.
struct IntegrationConfig {
  double t0{0.0};
  double t1{10.0};
  double rel_tol{1e-13};
  double abs_tol{1e-15};
  std::size_t max_steps{1000000};
  std::size_t samples{1001};
};

struct SampledTrajectory {
  std::vector<double> t;
  std::vector<TrajectoryState> state;
  LorentzForce force;
  InitialVelocity ic;
};

SampledTrajectory integrate_full(const LorentzForce& f,
                                 const InitialVelocity& ic,
                                 const IntegrationConfig& cfg);

struct SampledScalar {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> xp;
};

// The reduced equation x'' + h'(x) h(x) = rho with x(0) = 0,
// x'(0) = x0.
SampledScalar integrate_reduced(const InitialVelocity& ic, double rho,
                                const IntegrationConfig& cfg);

struct InvariantReport {
  double speed_drift{0.0};
  double first_integral_drift{0.0};
  double ode_residual_max{0.0};
};

// Maxima over a uniform grid of the left-frame speed drift, the drift
// of the first integral of the reduced flow, and the magnetic-equation
// residual (second derivatives by central differences).
InvariantReport monitor_invariants(const Trajectory& traj,
                                   const LorentzForce& f, double t0 = 0.0,
                                   double t1 = 10.0, std::size_t n = 200);
InvariantReport monitor_invariants(const SampledTrajectory& samples,
                                   const LorentzForce& f);

// True iff the magnetic trajectory with this initial velocity is also a
// geodesic: the velocity must span ker F (centre direction for
// F_{0,rho}, the J U line for F_{U,0}, only 0 in the mixed case).
// Rejects the zero force, where the question is vacuous.
bool geodesic_magnetic_classifier(const LorentzForce& f,
                                  const InitialVelocity& ic);

}  // namespace heis

#endif  // HEIS_ORACLE_HPP
