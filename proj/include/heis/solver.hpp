#ifndef HEIS_SOLVER_HPP
#define HEIS_SOLVER_HPP

#include <functional>
#include <optional>
#include <utility>

#include "heis/quartic.hpp"
#include "heis/trajectory.hpp"

// Closed-form magnetic trajectories.  For the canonical force F_{e1,rho}
// the first coordinate solves x'' + h'(x) h(x) = rho with
// h(x) = x^2/2 + (z0+rho) x + y0 + 1, and the remaining coordinates are
//     y(t) = integral_0^t (x^2/2 + (z0+rho) x + y0),
//     z(t) = -x y / 2 - (z0+rho) y - x' + x0.
// The force F_{0,rho} has an elementary circular-spiral solution, and a
// general force is handled by canonicalizing, solving, and mapping the
// solution back through the group action.

namespace heis {

// x(t) with its analytic derivative.
struct ReducedSolution {
  std::function<double(double)> x;
  std::function<double(double)> dx;
};

// The solution family for the classified case, with x(0) = 0 and
// x'(0) = x0.
ReducedSolution solve_x(const QuarticAnalysis& analysis);

struct Reconstruction {
  std::function<double(double)> y;
  std::function<double(double)> z;
};

// y by cached quadrature (one period when `period` is given, a prepared
// window of half-width `span` otherwise), z algebraically.
Reconstruction reconstruct_yz(const ReducedSolution& x,
                              const InitialVelocity& ic, double rho,
                              std::optional<double> period = std::nullopt,
                              double span = 64.0);

// Period (when the family is periodic) and the interval swept by x.
std::pair<std::optional<double>, std::optional<Interval>> period_and_image(
    const QuarticAnalysis& analysis);

// Magnetic trajectory for F_{e1, rho}.  Initial velocities with x0 < 0
// are reduced to x0 > 0 through the reflection-plus-time-reversal
// symmetry of the canonical force.
Trajectory solve_canonical(const InitialVelocity& ic, double rho);

// Magnetic trajectory for F_{0, rho} (rho = 0 gives the geodesics).
Trajectory solve_exact(const InitialVelocity& ic, double rho);

// Any left-invariant force: canonicalize, dispatch, map back.  The
// returned curve satisfies gamma(0) = e and gamma'(0) = ic.
Trajectory solve(const LorentzForce& f, const InitialVelocity& ic);

}  // namespace heis

#endif  // HEIS_SOLVER_HPP
