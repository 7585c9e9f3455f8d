#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace specrank {

// One demonstration: time-ordered end-effector position samples plus
// metadata. Coordinates are meters, dt seconds; absent dt means unit
// timestep. The quality label, when present, is 1 (worse), 2 (okay)
// or 3 (better).
struct Trajectory {
  std::string id;
  std::vector<std::vector<double>> samples;  // samples[t][d]
  std::optional<double> dt;
  std::optional<int> label;

  std::size_t length() const { return samples.size(); }
  std::size_t dim() const { return samples.empty() ? 0 : samples[0].size(); }
};

// Throws ValidationError unless: T >= 2, all samples share one
// dimensionality d >= 1, all coordinates finite, dt (if set) > 0,
// label (if set) in {1,2,3}.
void validate(const Trajectory& traj);

// An ordered collection of demonstrations. Load order is preserved and is
// the tie-break order everywhere downstream.
struct Dataset {
  std::string name;
  std::vector<Trajectory> trajectories;

  std::size_t size() const { return trajectories.size(); }
};

// Throws ValidationError unless nonempty, ids unique, every trajectory valid.
void validate(const Dataset& dataset);

}  // namespace specrank
