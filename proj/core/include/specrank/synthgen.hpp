#pragma once

#include <array>
#include <cstdint>

#include "specrank/trajectory.hpp"

namespace specrank {

// Sinusoidal jitter superimposed on a random contiguous sub-window.
// cycles_per_step must stay below Nyquist (0.5) when amplitude > 0.
struct OscillationSpec {
  double amplitude = 0.0;        // meters
  double cycles_per_step = 0.1;  // (0, 0.5)
  double burst_fraction = 0.0;   // [0, 1], fraction of T covered
};

// Zero-velocity holds: repeated samples inserted at random positions.
struct PauseSpec {
  int count = 0;
  int length_steps = 0;
};

// Excursions past a via-point followed by a corrective return.
struct OvershootSpec {
  int count = 0;
  double magnitude = 0.0;  // meters
};

// Non-expert motion artifacts applied to a clean base trajectory.
struct ArtifactSpec {
  OscillationSpec oscillation;
  PauseSpec pauses;
  OvershootSpec overshoots;
  std::uint64_t seed = 0;
};

void validate(const ArtifactSpec& spec);

struct SynthConfig {
  int n_per_label = 100;
  int base_length = 120;  // steps for the clean base motion, >= 16
  // artifact_levels[0] is label 1 (worse) ... artifact_levels[2] is label 3.
  std::array<ArtifactSpec, 3> artifact_levels;
  std::uint64_t seed = 0;
};

// Artifact levels tuned so label 1 scores well above label 2 above label 3
// under mean-detrended spectral scoring.
SynthConfig default_synth_config();

// Minimum-jerk (quintic) point-to-point motion plus a small smooth seeded
// perturbation that vanishes at the endpoints and scales with the travel
// distance (start == goal yields an exactly constant trajectory).
// perturb_scale is the perturbation amplitude as a fraction of the distance.
Trajectory generate_expert(const std::array<double, 3>& start,
                           const std::array<double, 3>& goal, int steps,
                           std::uint64_t seed, double perturb_scale = 0.004);

// Applies the artifact spec, seeded. Output length grows by
// pauses.count * length_steps plus the inserted overshoot segments.
// An all-zero spec returns the input unchanged.
Trajectory corrupt(const Trajectory& traj, const ArtifactSpec& spec);

// Labeled dataset: n_per_label demos per label class, random start/goal
// inside the unit workspace box with a fixed 0.5 m travel distance,
// interleaved label order, deterministic per seed.
Dataset generate_dataset(const SynthConfig& config);

}  // namespace specrank
