#ifndef HEIS_TRAJECTORY_HPP
#define HEIS_TRAJECTORY_HPP

#include <functional>
#include <optional>
#include <string>

#include "heis/algebra.hpp"

namespace heis {

// Velocity at the identity in the left-invariant frame: gamma'(0) =
// x0 e1 + y0 e2 + z0 e3.
struct InitialVelocity {
  double x0{0.0};
  double y0{0.0};
  double z0{0.0};
};

// Position and coordinate velocity of a curve at one time.
struct TrajectoryState {
  double x{0.0}, y{0.0}, z{0.0};
  double xp{0.0}, yp{0.0}, zp{0.0};

  GroupElement position() const { return {x, y, z}; }
  CoordinateVelocity velocity() const { return {xp, yp, zp}; }
};

struct Interval {
  double lo{0.0};
  double hi{0.0};
  bool lo_closed{true};
  bool hi_closed{true};
};

// Which solution family produced a trajectory.
enum class TrajectoryFamily {
  Trivial,        // one-parameter subgroup of the reduced problem, x == 0
  NegDelta,       // bounded oscillation between the two real roots
  PosDeltaLow,    // oscillation in [r1, r2]
  PosDeltaHigh,   // oscillation in [r3, r4]
  ZeroDeltaMuPos, // periodic rational-trigonometric solution
  ZeroDeltaMuNegRight,  // heteroclinic toward the double root, from above
  ZeroDeltaMuNegLeft,   // heteroclinic toward the double root, from below
  ZeroDeltaCubic, // triple-root case, rational solution
  Exact,          // force F_{0,rho}: circular-spiral solution
  Geodesic,       // zero force
  Numeric         // sampled from the ODE integrator
};

std::string to_string(TrajectoryFamily family);

// An evaluable magnetic trajectory through the identity.  Evaluation is
// defined for all real t and is safe to call concurrently; all internal
// caches are built at construction.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::function<TrajectoryState(double)> eval,
             TrajectoryFamily family, LorentzForce force, InitialVelocity ic)
      : eval_(std::move(eval)), family_(family), force_(force), ic_(ic) {}

  TrajectoryState operator()(double t) const { return eval_(t); }

  TrajectoryFamily family() const { return family_; }
  const LorentzForce& force() const { return force_; }
  const InitialVelocity& initial_velocity() const { return ic_; }

  const std::optional<double>& period() const { return period_; }
  const std::optional<Interval>& x_image() const { return x_image_; }

  void set_period(std::optional<double> p) { period_ = std::move(p); }
  void set_x_image(std::optional<Interval> i) { x_image_ = std::move(i); }

  // Left-frame speed at time t (constant along magnetic trajectories).
  double speed(double t) const {
    const TrajectoryState s = eval_(t);
    return norm(left_frame_velocity(s.position(), s.velocity()));
  }

 private:
  std::function<TrajectoryState(double)> eval_;
  TrajectoryFamily family_{TrajectoryFamily::Numeric};
  LorentzForce force_{};
  InitialVelocity ic_{};
  std::optional<double> period_;
  std::optional<Interval> x_image_;
};

}  // namespace heis

#endif  // HEIS_TRAJECTORY_HPP
