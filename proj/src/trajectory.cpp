#include "heis/trajectory.hpp"

namespace heis {

std::string to_string(TrajectoryFamily family) {
  switch (family) {
    case TrajectoryFamily::Trivial: return "trivial";
    case TrajectoryFamily::NegDelta: return "neg_delta";
    case TrajectoryFamily::PosDeltaLow: return "pos_delta_low";
    case TrajectoryFamily::PosDeltaHigh: return "pos_delta_high";
    case TrajectoryFamily::ZeroDeltaMuPos: return "zero_delta_mu_pos";
    case TrajectoryFamily::ZeroDeltaMuNegRight: return "zero_delta_mu_neg_right";
    case TrajectoryFamily::ZeroDeltaMuNegLeft: return "zero_delta_mu_neg_left";
    case TrajectoryFamily::ZeroDeltaCubic: return "zero_delta_cubic";
    case TrajectoryFamily::Exact: return "exact";
    case TrajectoryFamily::Geodesic: return "geodesic";
    case TrajectoryFamily::Numeric: return "numeric";
  }
  return "unknown";
}

}  // namespace heis
