#include "specrank/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "specrank/errors.hpp"
#include "specrank/rng.hpp"

namespace specrank {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTravelDistance = 0.5;  // meters, inside the unit box

double quintic(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }

bool is_identity(const ArtifactSpec& spec) {
  const bool no_oscillation = spec.oscillation.amplitude == 0.0 ||
                              spec.oscillation.burst_fraction == 0.0;
  const bool no_pauses = spec.pauses.count == 0 || spec.pauses.length_steps == 0;
  const bool no_overshoots =
      spec.overshoots.count == 0 || spec.overshoots.magnitude == 0.0;
  return no_oscillation && no_pauses && no_overshoots;
}

void add_oscillation(std::vector<std::vector<double>>& samples,
                     const OscillationSpec& osc, std::uint64_t seed) {
  const std::size_t steps = samples.size();
  const std::size_t window = static_cast<std::size_t>(
      std::llround(osc.burst_fraction * static_cast<double>(steps)));
  if (window == 0) return;
  Random rng(seed);
  const std::size_t offset =
      window >= steps ? 0 : rng.below(steps - window + 1);
  const std::array<double, 3> dir = rng.unit_vector();
  const double phase = rng.uniform(0.0, 2.0 * kPi);
  const std::size_t end = std::min(steps, offset + window);
  for (std::size_t t = offset; t < end; ++t) {
    const double s = osc.amplitude *
                     std::sin(2.0 * kPi * osc.cycles_per_step *
                                  static_cast<double>(t - offset) +
                              phase);
    for (std::size_t d = 0; d < samples[t].size() && d < 3; ++d) {
      samples[t][d] += dir[d] * s;
    }
  }
}

void add_overshoots(std::vector<std::vector<double>>& samples,
                    const OvershootSpec& spec, std::uint64_t seed) {
  constexpr std::size_t kSegment = 8;  // inserted samples per excursion
  Random rng(seed);
  const std::size_t steps = samples.size();
  const std::size_t dims = samples[0].size();

  // Draw all positions against the original length, then insert from the
  // back so earlier indices stay valid.
  std::vector<std::size_t> positions(static_cast<std::size_t>(spec.count));
  for (auto& p : positions) p = 1 + rng.below(steps - 1);
  std::sort(positions.rbegin(), positions.rend());

  for (std::size_t p : positions) {
    std::vector<double> dir(dims, 0.0);
    double norm = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
      dir[d] = samples[p][d] - samples[p - 1][d];
      norm += dir[d] * dir[d];
    }
    norm = std::sqrt(norm);
    if (norm < 1e-12) {
      const auto random_dir = rng.unit_vector();
      for (std::size_t d = 0; d < dims && d < 3; ++d) dir[d] = random_dir[d];
      norm = 1.0;
    }
    std::vector<std::vector<double>> segment(kSegment,
                                             std::vector<double>(dims));
    for (std::size_t j = 0; j < kSegment; ++j) {
      const double bump =
          spec.magnitude *
          std::sin(kPi * static_cast<double>(j + 1) /
                   static_cast<double>(kSegment + 1));
      for (std::size_t d = 0; d < dims; ++d) {
        segment[j][d] = samples[p][d] + dir[d] / norm * bump;
      }
    }
    samples.insert(samples.begin() + static_cast<std::ptrdiff_t>(p) + 1,
                   segment.begin(), segment.end());
  }
}

void add_pauses(std::vector<std::vector<double>>& samples,
                const PauseSpec& spec, std::uint64_t seed) {
  Random rng(seed);
  std::vector<std::size_t> positions(static_cast<std::size_t>(spec.count));
  for (auto& p : positions) p = rng.below(samples.size());
  std::sort(positions.rbegin(), positions.rend());
  for (std::size_t p : positions) {
    samples.insert(samples.begin() + static_cast<std::ptrdiff_t>(p) + 1,
                   static_cast<std::size_t>(spec.length_steps), samples[p]);
  }
}

}  // namespace

void validate(const ArtifactSpec& spec) {
  const auto& osc = spec.oscillation;
  if (osc.amplitude < 0.0 || !std::isfinite(osc.amplitude)) {
    throw ValidationError("oscillation amplitude must be >= 0");
  }
  if (osc.amplitude > 0.0 &&
      !(osc.cycles_per_step > 0.0 && osc.cycles_per_step < 0.5)) {
    throw ValidationError(
        "oscillation cycles_per_step must lie in (0, 0.5) below Nyquist");
  }
  if (osc.burst_fraction < 0.0 || osc.burst_fraction > 1.0) {
    throw ValidationError("oscillation burst_fraction must lie in [0, 1]");
  }
  if (spec.pauses.count < 0 || spec.pauses.length_steps < 0) {
    throw ValidationError("pause count and length must be >= 0");
  }
  if (spec.overshoots.count < 0 || spec.overshoots.magnitude < 0.0) {
    throw ValidationError("overshoot count and magnitude must be >= 0");
  }
}

SynthConfig default_synth_config() {
  SynthConfig config;
  config.n_per_label = 100;
  config.base_length = 120;
  // label 1 (worse): strong artifacts everywhere.
  config.artifact_levels[0] = ArtifactSpec{
      .oscillation = {.amplitude = 0.025, .cycles_per_step = 0.15,
                      .burst_fraction = 0.7},
      .pauses = {.count = 3, .length_steps = 12},
      .overshoots = {.count = 3, .magnitude = 0.05},
  };
  // label 2 (okay): moderate artifacts.
  config.artifact_levels[1] = ArtifactSpec{
      .oscillation = {.amplitude = 0.008, .cycles_per_step = 0.08,
                      .burst_fraction = 0.4},
      .pauses = {.count = 1, .length_steps = 8},
      .overshoots = {.count = 1, .magnitude = 0.02},
  };
  // label 3 (better): nearly clean.
  config.artifact_levels[2] = ArtifactSpec{
      .oscillation = {.amplitude = 0.0005, .cycles_per_step = 0.05,
                      .burst_fraction = 0.2},
      .pauses = {.count = 0, .length_steps = 0},
      .overshoots = {.count = 0, .magnitude = 0.0},
  };
  return config;
}

Trajectory generate_expert(const std::array<double, 3>& start,
                           const std::array<double, 3>& goal, int steps,
                           std::uint64_t seed, double perturb_scale) {
  if (steps < 16) {
    throw ValidationError("expert trajectory needs at least 16 steps, got " +
                          std::to_string(steps));
  }
  if (perturb_scale < 0.0) {
    throw ValidationError("perturb_scale must be >= 0");
  }

  double distance = 0.0;
  for (std::size_t d = 0; d < 3; ++d) {
    const double delta = goal[d] - start[d];
    distance += delta * delta;
  }
  distance = std::sqrt(distance);
  const double amplitude = perturb_scale * distance;

  // Low-frequency harmonics sin(pi * h * u) vanish at both endpoints.
  constexpr int kHarmonics = 3;
  Random rng(seed);
  std::array<std::array<double, kHarmonics>, 3> coeff{};
  for (std::size_t d = 0; d < 3; ++d) {
    for (int h = 0; h < kHarmonics; ++h) {
      coeff[d][static_cast<std::size_t>(h)] =
          amplitude * rng.uniform(-1.0, 1.0) / static_cast<double>(h + 1);
    }
  }

  Trajectory traj;
  traj.id = "expert";
  traj.samples.resize(static_cast<std::size_t>(steps));
  const double denom = static_cast<double>(steps - 1);
  for (int t = 0; t < steps; ++t) {
    const double u = static_cast<double>(t) / denom;
    const double s = quintic(u);
    auto& sample = traj.samples[static_cast<std::size_t>(t)];
    sample.resize(3);
    for (std::size_t d = 0; d < 3; ++d) {
      double value = start[d] + (goal[d] - start[d]) * s;
      for (int h = 0; h < kHarmonics; ++h) {
        value += coeff[d][static_cast<std::size_t>(h)] *
                 std::sin(kPi * static_cast<double>(h + 1) * u);
      }
      sample[d] = value;
    }
  }
  traj.samples.front() = {start[0], start[1], start[2]};
  traj.samples.back() = {goal[0], goal[1], goal[2]};
  return traj;
}

Trajectory corrupt(const Trajectory& traj, const ArtifactSpec& spec) {
  validate(traj);
  validate(spec);
  if (is_identity(spec)) return traj;

  Trajectory out = traj;
  if (spec.oscillation.amplitude > 0.0) {
    add_oscillation(out.samples, spec.oscillation, derive_seed(spec.seed, 1));
  }
  if (spec.overshoots.count > 0 && spec.overshoots.magnitude > 0.0) {
    add_overshoots(out.samples, spec.overshoots, derive_seed(spec.seed, 2));
  }
  if (spec.pauses.count > 0 && spec.pauses.length_steps > 0) {
    add_pauses(out.samples, spec.pauses, derive_seed(spec.seed, 3));
  }
  return out;
}

Dataset generate_dataset(const SynthConfig& config) {
  if (config.n_per_label < 1) {
    throw ValidationError("n_per_label must be >= 1, got " +
                          std::to_string(config.n_per_label));
  }
  if (config.base_length < 16) {
    throw ValidationError("base_length must be >= 16, got " +
                          std::to_string(config.base_length));
  }
  for (const auto& level : config.artifact_levels) validate(level);

  Dataset dataset;
  dataset.name = "synth_" + std::to_string(config.seed);
  dataset.trajectories.reserve(
      static_cast<std::size_t>(config.n_per_label) * 3);

  std::size_t demo_index = 0;
  for (int i = 0; i < config.n_per_label; ++i) {
    for (int label = 1; label <= 3; ++label) {
      Random rng(derive_seed(config.seed, demo_index * 4));
      std::array<double, 3> start{};
      for (auto& c : start) c = rng.uniform();
      std::array<double, 3> dir = rng.unit_vector();
      // Point each axis toward the far wall so the goal stays in the box.
      std::array<double, 3> goal{};
      for (std::size_t d = 0; d < 3; ++d) {
        const double component =
            start[d] <= 0.5 ? std::abs(dir[d]) : -std::abs(dir[d]);
        goal[d] = start[d] + kTravelDistance * component;
      }

      Trajectory traj =
          generate_expert(start, goal, config.base_length,
                          derive_seed(config.seed, demo_index * 4 + 1));
      ArtifactSpec level =
          config.artifact_levels[static_cast<std::size_t>(label - 1)];
      level.seed = derive_seed(config.seed, demo_index * 4 + 2);
      traj = corrupt(traj, level);

      char id[32];
      std::snprintf(id, sizeof(id), "demo_%04zu", demo_index);
      traj.id = id;
      traj.label = label;
      dataset.trajectories.push_back(std::move(traj));
      ++demo_index;
    }
  }
  return dataset;
}

}  // namespace specrank
