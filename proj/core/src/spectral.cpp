#include "specrank/spectral.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <thread>
#include <utility>

#include "specrank/errors.hpp"
#include "specrank/kinematics.hpp"
#include "specrank/version.hpp"

namespace specrank {

namespace {

constexpr double kPi = std::numbers::pi;

void check_signal(std::span<const double> signal) {
  if (signal.size() < 2) {
    throw ValidationError("transform needs at least 2 samples, got " +
                          std::to_string(signal.size()));
  }
  for (std::size_t t = 0; t < signal.size(); ++t) {
    if (!std::isfinite(signal[t])) {
      throw ValidationError("transform input has a non-finite value at index " +
                            std::to_string(t));
    }
  }
}

// In-place iterative radix-2 transform; sign -1 forward, +1 inverse
// (inverse unscaled). Size must be a power of two.
void radix2_fft(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = sign * 2.0 * kPi / static_cast<double>(len);
    const std::complex<double> step(std::cos(angle), std::sin(angle));
    for (std::size_t block = 0; block < n; block += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const auto u = a[block + j];
        const auto v = a[block + j + len / 2] * w;
        a[block + j] = u + v;
        a[block + j + len / 2] = u - v;
        w *= step;
      }
    }
  }
}

// Chirp-z (Bluestein): expresses an arbitrary-length transform as a
// convolution, evaluated with radix-2 transforms of size >= 2T-1.
// Chirp phases are folded mod 2T before the trig call so large t*t
// arguments lose no precision.
std::vector<std::complex<double>> bluestein(std::span<const double> signal) {
  const std::size_t n = signal.size();
  const std::size_t m = std::bit_ceil(2 * n - 1);

  std::vector<std::complex<double>> chirp(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::uint64_t folded =
        (static_cast<std::uint64_t>(t) * t) % (2 * n);
    const double angle = -kPi * static_cast<double>(folded) /
                         static_cast<double>(n);
    chirp[t] = {std::cos(angle), std::sin(angle)};
  }

  std::vector<std::complex<double>> a(m), b(m);
  for (std::size_t t = 0; t < n; ++t) a[t] = signal[t] * chirp[t];
  b[0] = {1.0, 0.0};
  for (std::size_t t = 1; t < n; ++t) {
    b[t] = std::conj(chirp[t]);
    b[m - t] = b[t];
  }

  radix2_fft(a, -1);
  radix2_fft(b, -1);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  radix2_fft(a, +1);

  std::vector<std::complex<double>> out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
  return out;
}

void detrend_in_place(std::vector<double>& signal, Detrend mode) {
  const std::size_t n = signal.size();
  if (mode == Detrend::none) return;
  double sum = 0.0;
  for (double v : signal) sum += v;
  const double mean = sum / static_cast<double>(n);
  if (mode == Detrend::mean) {
    for (double& v : signal) v -= mean;
    return;
  }
  // Least-squares line over t = 0..n-1, via the centered normal equations.
  const double t_mean = static_cast<double>(n - 1) / 2.0;
  const double t_var = static_cast<double>(n) *
                       (static_cast<double>(n) * static_cast<double>(n) - 1.0) /
                       12.0;
  double cross = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    cross += (static_cast<double>(t) - t_mean) * signal[t];
  }
  const double slope = cross / t_var;
  const double intercept = mean - slope * t_mean;
  for (std::size_t t = 0; t < n; ++t) {
    signal[t] -= intercept + slope * static_cast<double>(t);
  }
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

}  // namespace

const char* to_string(Detrend mode) {
  switch (mode) {
    case Detrend::none: return "none";
    case Detrend::mean: return "mean";
    case Detrend::linear: return "linear";
  }
  return "none";
}

const char* to_string(LengthNormalize mode) {
  return mode == LengthNormalize::per_sample ? "per-sample" : "none";
}

std::string fingerprint(const SpectralConfig& config) {
  std::string canonical = std::string("specrank ") + kVersion +
                          "|detrend=" + to_string(config.detrend) +
                          "|include_dc=" + (config.include_dc ? "1" : "0") +
                          "|length_normalize=" +
                          to_string(config.length_normalize) + "|power=mag2";
  const std::uint64_t hash = fnv1a64(canonical);
  static const char* digits = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[static_cast<std::size_t>(i)] = digits[(hash >> (4 * (15 - i))) & 0xf];
  }
  return hex;
}

Spectrum dft(std::span<const double> signal) {
  check_signal(signal);
  if (std::has_single_bit(signal.size())) {
    std::vector<std::complex<double>> coefficients(signal.begin(),
                                                   signal.end());
    radix2_fft(coefficients, -1);
    return Spectrum{std::move(coefficients)};
  }
  return Spectrum{bluestein(signal)};
}

Spectrum dft_direct(std::span<const double> signal) {
  check_signal(signal);
  const std::size_t n = signal.size();
  std::vector<std::complex<double>> twiddle(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double angle =
        -2.0 * kPi * static_cast<double>(r) / static_cast<double>(n);
    twiddle[r] = {std::cos(angle), std::sin(angle)};
  }
  std::vector<std::complex<double>> coefficients(n);
  for (std::size_t k = 0; k < n; ++k) {
    double re = 0.0;
    double im = 0.0;
    std::size_t idx = 0;  // (t * k) mod n, updated incrementally
    for (std::size_t t = 0; t < n; ++t) {
      re += signal[t] * twiddle[idx].real();
      im += signal[t] * twiddle[idx].imag();
      idx += k;
      if (idx >= n) idx -= n;
    }
    coefficients[k] = {re, im};
  }
  return Spectrum{std::move(coefficients)};
}

SpectralResult score_trajectory(const Trajectory& traj,
                                const SpectralConfig& config) {
  validate(traj);
  const std::size_t steps = traj.length();
  const std::size_t dims = traj.dim();

  SpectralResult result;
  result.config = config;
  result.per_dimension_power.resize(dims);

  std::vector<double> signal(steps);
  for (std::size_t d = 0; d < dims; ++d) {
    for (std::size_t t = 0; t < steps; ++t) signal[t] = traj.samples[t][d];
    detrend_in_place(signal, config.detrend);
    const Spectrum spectrum = dft(signal);

    auto& power = result.per_dimension_power[d];
    power.resize(steps);
    for (std::size_t k = 0; k < steps; ++k) {
      power[k] = std::norm(spectrum.coefficients[k]);
    }
    if (!config.include_dc) power[0] = 0.0;
    if (config.length_normalize == LengthNormalize::per_sample) {
      const double inv_steps = 1.0 / static_cast<double>(steps);
      for (double& p : power) p *= inv_steps;
    }
  }

  // Fixed summation order: dimensions ascending per bin, then bins ascending.
  result.aggregated_power.assign(steps, 0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    double per_bin = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
      per_bin += result.per_dimension_power[d][k];
    }
    result.aggregated_power[k] = per_bin;
  }
  double total = 0.0;
  for (std::size_t k = 0; k < steps; ++k) total += result.aggregated_power[k];
  result.total_power = total;
  return result;
}

ScoreTable score_dataset(const Dataset& dataset, const SpectralConfig& config,
                         unsigned jobs) {
  validate(dataset);

  const std::size_t dims = dataset.trajectories[0].dim();
  std::string offenders;
  for (const auto& traj : dataset.trajectories) {
    if (traj.dim() != dims) {
      offenders += offenders.empty() ? "" : ", ";
      offenders += "'" + traj.id + "' (d=" + std::to_string(traj.dim()) + ")";
    }
  }
  if (!offenders.empty()) {
    throw ValidationError("mixed dimensionality: expected d=" +
                          std::to_string(dims) + " but got " + offenders);
  }

  const std::size_t count = dataset.size();
  ScoreTable table;
  table.config_fingerprint = fingerprint(config);
  table.rows.resize(count);

  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> cursor{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= count) return;
      const Trajectory& traj = dataset.trajectories[i];
      try {
        ScoreRow row;
        row.id = traj.id;
        row.length = traj.length();
        row.total_power = score_trajectory(traj, config).total_power;
        const KinematicScores kin = kinematic_scores(traj);
        row.path_length = kin.path_length;
        row.mean_jerk = kin.mean_jerk;
        row.label = traj.label;
        table.rows[i] = std::move(row);
      } catch (const ValidationError& err) {
        const std::string what = err.what();
        failures[i] = std::make_exception_ptr(
            what.starts_with("trajectory '")
                ? err
                : ValidationError("trajectory '" + traj.id + "': " + what));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  unsigned thread_count = jobs == 0 ? 1 : jobs;
  thread_count = static_cast<unsigned>(
      std::min<std::size_t>(thread_count, count));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }

  // Report the earliest failure so the error does not depend on scheduling.
  for (std::size_t i = 0; i < count; ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
  }
  return table;
}

}  // namespace specrank
