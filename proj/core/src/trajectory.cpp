#include "specrank/trajectory.hpp"

#include <cmath>
#include <unordered_map>

#include "specrank/errors.hpp"

namespace specrank {

void validate(const Trajectory& traj) {
  if (traj.samples.size() < 2) {
    throw ValidationError("trajectory '" + traj.id +
                          "': trajectory too short (need at least 2 samples, "
                          "got " +
                          std::to_string(traj.samples.size()) + ")");
  }
  const std::size_t dim = traj.samples[0].size();
  if (dim < 1) {
    throw ValidationError("trajectory '" + traj.id +
                          "': samples must have at least one coordinate");
  }
  for (std::size_t t = 0; t < traj.samples.size(); ++t) {
    const auto& sample = traj.samples[t];
    if (sample.size() != dim) {
      throw ValidationError(
          "trajectory '" + traj.id + "': sample " + std::to_string(t) +
          " has " + std::to_string(sample.size()) +
          " coordinates, expected " + std::to_string(dim));
    }
    for (std::size_t d = 0; d < dim; ++d) {
      if (!std::isfinite(sample[d])) {
        throw ValidationError("trajectory '" + traj.id +
                              "': non-finite coordinate at sample " +
                              std::to_string(t) + ", dimension " +
                              std::to_string(d));
      }
    }
  }
  if (traj.dt.has_value() && !(*traj.dt > 0.0 && std::isfinite(*traj.dt))) {
    throw ValidationError("trajectory '" + traj.id +
                          "': dt must be a positive finite number");
  }
  if (traj.label.has_value() &&
      (*traj.label < 1 || *traj.label > 3)) {
    throw ValidationError("trajectory '" + traj.id +
                          "': label must be 1, 2 or 3, got " +
                          std::to_string(*traj.label));
  }
}

void validate(const Dataset& dataset) {
  if (dataset.trajectories.empty()) {
    throw ValidationError("dataset '" + dataset.name + "' is empty");
  }
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < dataset.trajectories.size(); ++i) {
    const auto& traj = dataset.trajectories[i];
    auto [it, inserted] = seen.emplace(traj.id, i);
    if (!inserted) {
      throw ValidationError("duplicate trajectory id '" + traj.id +
                            "' (records " + std::to_string(it->second) +
                            " and " + std::to_string(i) + ")");
    }
    validate(traj);
  }
}

}  // namespace specrank
