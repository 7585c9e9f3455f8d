#include "specrank/kinematics.hpp"

#include <cmath>

#include "specrank/errors.hpp"

namespace specrank {

double path_length(const Trajectory& traj) {
  validate(traj);
  const std::size_t steps = traj.length();
  const std::size_t dims = traj.dim();
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < steps; ++t) {
    double sq = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
      const double delta = traj.samples[t + 1][d] - traj.samples[t][d];
      sq += delta * delta;
    }
    total += std::sqrt(sq);
  }
  return total;
}

double mean_jerk(const Trajectory& traj) {
  validate(traj);
  const std::size_t steps = traj.length();
  if (steps < 4) {
    throw ValidationError("trajectory too short for jerk (need at least 4 "
                          "samples, got " +
                          std::to_string(steps) + ")");
  }
  const std::size_t dims = traj.dim();
  const double dt = traj.dt.value_or(1.0);
  const double inv_dt3 = 1.0 / (dt * dt * dt);

  double total = 0.0;
  for (std::size_t t = 0; t + 3 < steps; ++t) {
    double sq = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
      const double third = traj.samples[t + 3][d] - 3.0 * traj.samples[t + 2][d] +
                           3.0 * traj.samples[t + 1][d] - traj.samples[t][d];
      sq += third * third;
    }
    total += std::sqrt(sq) * inv_dt3;
  }
  return total / static_cast<double>(steps - 3);
}

KinematicScores kinematic_scores(const Trajectory& traj) {
  return {path_length(traj), mean_jerk(traj)};
}

}  // namespace specrank
