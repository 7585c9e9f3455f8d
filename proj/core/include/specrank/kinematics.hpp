#pragma once

#include "specrank/trajectory.hpp"

namespace specrank {

struct KinematicScores {
  double path_length = 0.0;
  double mean_jerk = 0.0;
};

// Polyline arc length: sum of ||x(t+1) - x(t)|| in time order.
double path_length(const Trajectory& traj);

// Mean norm of the forward third difference x(t+3) - 3x(t+2) + 3x(t+1) - x(t)
// divided by dt^3 (dt defaults to 1). Mean rather than sum, so the value
// measures jerkiness independent of duration. Requires T >= 4.
double mean_jerk(const Trajectory& traj);

KinematicScores kinematic_scores(const Trajectory& traj);

}  // namespace specrank
