#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "specrank/score_table.hpp"
#include "specrank/trajectory.hpp"

namespace specrank {

enum class Detrend { none, mean, linear };
enum class LengthNormalize { none, per_sample };

const char* to_string(Detrend mode);
const char* to_string(LengthNormalize mode);

// Scoring options. The defaults compute the raw total spectral power:
// no detrending, DC bin included, no length normalization. Per-bin power
// is |X(omega_k)|^2 with proportionality constant 1, so with the defaults
// the score obeys Parseval exactly: W = sum_d T * sum_t x_d(t)^2.
//
// Note the sample timestamp is the integer index t, never dt: the score is
// sample-rate-agnostic, which also means datasets that mix sample rates are
// not comparable under W.
struct SpectralConfig {
  Detrend detrend = Detrend::none;
  bool include_dc = true;
  LengthNormalize length_normalize = LengthNormalize::none;
};

// Hex digest of the config plus tool version. Written into score tables and
// copied into curation manifests so a filter run can be traced back to the
// exact scoring configuration.
std::string fingerprint(const SpectralConfig& config);

// Forward transform on the grid omega_k = 2*pi*k/T, k = 0..T-1. No
// zero-padding: the grid is defined by the signal's own length.
struct Spectrum {
  std::vector<std::complex<double>> coefficients;

  std::size_t size() const { return coefficients.size(); }
};

// Fast transform: radix-2 for power-of-two lengths, Bluestein (chirp-z)
// otherwise. Handles any T >= 2, including primes.
Spectrum dft(std::span<const double> signal);

// Direct O(T^2) evaluation of the transform sum. Reference implementation:
// shares no code path with dft(), so the two can check each other.
Spectrum dft_direct(std::span<const double> signal);

// Full spectral decomposition of one trajectory.
struct SpectralResult {
  std::vector<std::vector<double>> per_dimension_power;  // [d][k]
  std::vector<double> aggregated_power;                  // [k], summed over d
  double total_power = 0.0;                              // W
  SpectralConfig config;

  std::size_t bins() const { return aggregated_power.size(); }
};

// Scores one trajectory: per dimension, detrend per config, transform,
// square magnitudes; zero the k=0 bin when include_dc is false; divide every
// bin by T under per_sample normalization. Aggregation sums dimensions
// ascending per bin, then W sums bins ascending, so results are
// bit-reproducible.
SpectralResult score_trajectory(const Trajectory& traj,
                                const SpectralConfig& config);

// Scores every trajectory and fills the kinematic baseline columns.
// `jobs` threads score independent trajectories; the output is bit-identical
// for any jobs value. Throws if trajectories mix dimensionalities.
ScoreTable score_dataset(const Dataset& dataset, const SpectralConfig& config,
                         unsigned jobs = 1);

}  // namespace specrank
