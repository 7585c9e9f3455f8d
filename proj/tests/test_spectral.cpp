#include "specrank/spectral.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "specrank/errors.hpp"
#include "specrank/rng.hpp"
#include "test_support.hpp"

using namespace specrank;
using test_support::make_trajectory;
using test_support::random_signal;
using test_support::random_trajectory;
using test_support::rel_err;

namespace {

double max_magnitude(const Spectrum& spectrum) {
  double peak = 0.0;
  for (const auto& c : spectrum.coefficients) {
    peak = std::max(peak, std::abs(c));
  }
  return peak;
}

const std::vector<SpectralConfig>& all_configs() {
  static const std::vector<SpectralConfig> configs = [] {
    std::vector<SpectralConfig> out;
    for (Detrend detrend : {Detrend::none, Detrend::mean, Detrend::linear}) {
      for (bool dc : {true, false}) {
        for (LengthNormalize norm :
             {LengthNormalize::none, LengthNormalize::per_sample}) {
          out.push_back({detrend, dc, norm});
        }
      }
    }
    return out;
  }();
  return configs;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("dft rejects short and non-finite input") {
  CHECK_THROWS_AS(dft(std::vector<double>{1.0}), ValidationError);
  CHECK_THROWS_AS(dft(std::vector<double>{}), ValidationError);
  const std::vector<double> bad = {0.0, std::nan(""), 1.0};
  CHECK_THROWS_AS(dft(bad), ValidationError);
  CHECK_THROWS_AS(dft_direct(std::vector<double>{2.0}), ValidationError);
}

TEST_CASE("constant signal puts all energy at DC") {
  const std::vector<double> ones = {1.0, 1.0, 1.0, 1.0};
  const Spectrum spectrum = dft(ones);
  REQUIRE(spectrum.size() == 4);
  CHECK(std::abs(spectrum.coefficients[0] - std::complex<double>(4.0, 0.0)) <
        1e-12);
  for (std::size_t k = 1; k < 4; ++k) {
    CHECK(std::abs(spectrum.coefficients[k]) < 1e-12);
  }
}

TEST_CASE("bin-aligned sine at T=4 puts power T^2/4 at k=1 and k=3") {
  // sin(2*pi*t/4) sampled at t = 0..3; expected magnitudes verified by
  // direct evaluation of the transform sum.
  const std::vector<double> sine = {0.0, 1.0, 0.0, -1.0};
  const Spectrum fast = dft(sine);
  const Spectrum direct = dft_direct(sine);
  const double expected[4] = {0.0, 2.0, 0.0, 2.0};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(std::abs(fast.coefficients[k]) - expected[k]) < 1e-12);
    CHECK(std::abs(std::abs(direct.coefficients[k]) - expected[k]) < 1e-12);
  }
}

TEST_CASE("fast transform matches the direct summation on assorted lengths") {
  Random rng(2024);
  for (std::size_t n :
       {2ul, 3ul, 4ul, 5ul, 7ul, 8ul, 16ul, 17ul, 31ul, 97ul, 101ul, 128ul,
        360ul, 997ul, 1000ul}) {
    const std::vector<double> signal = random_signal(rng, n);
    const Spectrum fast = dft(signal);
    const Spectrum direct = dft_direct(signal);
    const double scale = std::max(max_magnitude(direct), 1e-12);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(fast.coefficients[k] - direct.coefficients[k]) <=
            1e-9 * scale);
    }
  }
}

TEST_CASE("Parseval: spectrum energy equals T times time-domain energy") {
  Random rng(7);
  for (std::size_t n : {2ul, 5ul, 64ul, 97ul, 501ul, 1024ul, 2003ul}) {
    const std::vector<double> signal = random_signal(rng, n);
    double time_energy = 0.0;
    for (double v : signal) time_energy += v * v;
    const Spectrum spectrum = dft(signal);
    double spectral_energy = 0.0;
    for (const auto& c : spectrum.coefficients) {
      spectral_energy += std::norm(c);
    }
    CHECK(rel_err(spectral_energy, static_cast<double>(n) * time_energy) <=
          1e-9);
  }
}

TEST_CASE("conjugate symmetry holds for real input") {
  Random rng(99);
  for (std::size_t n : {6ul, 37ul, 128ul, 255ul}) {
    const std::vector<double> signal = random_signal(rng, n);
    const Spectrum spectrum = dft(signal);
    const double scale = std::max(max_magnitude(spectrum), 1e-12);
    for (std::size_t k = 1; k < n; ++k) {
      CHECK(std::abs(spectrum.coefficients[k] -
                     std::conj(spectrum.coefficients[n - k])) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("transform is linear") {
  Random rng(41);
  for (std::size_t n : {16ul, 45ul}) {
    const std::vector<double> x = random_signal(rng, n);
    const std::vector<double> y = random_signal(rng, n);
    const double a = 2.5;
    const double b = -0.75;
    std::vector<double> combined(n);
    for (std::size_t t = 0; t < n; ++t) combined[t] = a * x[t] + b * y[t];
    const Spectrum lhs = dft(combined);
    const Spectrum fx = dft(x);
    const Spectrum fy = dft(y);
    const double scale = std::max(max_magnitude(lhs), 1e-12);
    for (std::size_t k = 0; k < n; ++k) {
      const auto rhs = a * fx.coefficients[k] + b * fy.coefficients[k];
      CHECK(std::abs(lhs.coefficients[k] - rhs) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("constant trajectory scores") {
  Trajectory constant = make_trajectory(
      "const", std::vector<std::vector<double>>(100, {5.0, 5.0, 5.0}));

  SUBCASE("mean detrend removes the only component") {
    const SpectralConfig config{.detrend = Detrend::mean};
    CHECK(score_trajectory(constant, config).total_power == 0.0);
  }
  SUBCASE("default config keeps the DC energy: 3 * (T*5)^2") {
    const SpectralConfig config{};
    const double w = score_trajectory(constant, config).total_power;
    CHECK(rel_err(w, 750000.0) <= 1e-9);
  }
  SUBCASE("excluding DC zeroes it") {
    const SpectralConfig config{.include_dc = false};
    CHECK(score_trajectory(constant, config).total_power <= 1e-9 * 750000.0);
  }
}

TEST_CASE("quadratic scaling: W(c*x) = c^2 * W(x) for every config") {
  Random rng(5150);
  const Trajectory traj = random_trajectory(rng, 90);
  for (const auto& config : all_configs()) {
    const double base = score_trajectory(traj, config).total_power;
    for (double c : {0.5, 2.0, 10.0}) {
      Trajectory scaled = traj;
      for (auto& sample : scaled.samples) {
        for (auto& v : sample) v *= c;
      }
      const double w = score_trajectory(scaled, config).total_power;
      CHECK(rel_err(w, c * c * base) <= 1e-12);
    }
  }
}

TEST_CASE("mean detrend makes W translation invariant") {
  Random rng(31);
  const Trajectory traj = random_trajectory(rng, 75);
  Trajectory shifted = traj;
  for (auto& sample : shifted.samples) {
    sample[0] += 12.5;
    sample[1] -= 3.25;
    sample[2] += 0.5;
  }
  const SpectralConfig config{.detrend = Detrend::mean};
  const double base = score_trajectory(traj, config).total_power;
  const double moved = score_trajectory(shifted, config).total_power;
  CHECK(rel_err(moved, base) <= 1e-9);
}

TEST_CASE("added zero-mean oscillation raises W under every config") {
  const std::size_t steps = 96;
  std::vector<std::vector<double>> line(steps, std::vector<double>(3, 0.0));
  for (std::size_t t = 0; t < steps; ++t) {
    line[t][0] = 0.01 * static_cast<double>(t);
    line[t][1] = 0.2;
    line[t][2] = -0.004 * static_cast<double>(t);
  }
  const Trajectory smooth = make_trajectory("smooth", line);
  Trajectory noisy = smooth;
  noisy.id = "noisy";
  for (std::size_t t = 0; t < steps; ++t) {
    const double osc = 0.05 * std::sin(2.0 * std::numbers::pi * 12.0 *
                                       static_cast<double>(t) /
                                       static_cast<double>(steps));
    for (auto& v : noisy.samples[t]) v += osc;
  }
  for (const auto& config : all_configs()) {
    const double w_smooth = score_trajectory(smooth, config).total_power;
    const double w_noisy = score_trajectory(noisy, config).total_power;
    CHECK(w_noisy > w_smooth);
  }
}

TEST_CASE("per-sample normalization divides the score by T") {
  Random rng(77);
  const Trajectory traj = random_trajectory(rng, 120);
  const double raw =
      score_trajectory(traj, SpectralConfig{}).total_power;
  const double normalized =
      score_trajectory(traj,
                       SpectralConfig{.length_normalize =
                                          LengthNormalize::per_sample})
          .total_power;
  CHECK(rel_err(normalized, raw / 120.0) <= 1e-12);
}

TEST_CASE("result sums are bit-reproducible from the stored arrays") {
  Random rng(12);
  const Trajectory traj = random_trajectory(rng, 63);
  const SpectralResult result = score_trajectory(traj, SpectralConfig{});
  for (std::size_t k = 0; k < result.bins(); ++k) {
    double per_bin = 0.0;
    for (const auto& dim_power : result.per_dimension_power) {
      per_bin += dim_power[k];
    }
    CHECK(per_bin == result.aggregated_power[k]);
  }
  double total = 0.0;
  for (double p : result.aggregated_power) total += p;
  CHECK(total == result.total_power);
}

TEST_CASE("score_dataset output is independent of the thread count") {
  Random rng(808);
  Dataset dataset;
  dataset.name = "threads";
  for (int i = 0; i < 24; ++i) {
    Trajectory traj = random_trajectory(rng, 64 + 7 * i);
    traj.id = "demo_" + std::to_string(i);
    dataset.trajectories.push_back(std::move(traj));
  }
  const SpectralConfig config{.detrend = Detrend::mean};
  const ScoreTable serial = score_dataset(dataset, config, 1);
  const ScoreTable parallel = score_dataset(dataset, config, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(std::memcmp(&serial.rows[i].total_power,
                      &parallel.rows[i].total_power, sizeof(double)) == 0);
    CHECK(std::memcmp(&serial.rows[i].mean_jerk, &parallel.rows[i].mean_jerk,
                      sizeof(double)) == 0);
    CHECK(std::memcmp(&serial.rows[i].path_length,
                      &parallel.rows[i].path_length, sizeof(double)) == 0);
  }
}

TEST_CASE("score_dataset rejects mixed dimensionality naming the ids") {
  Dataset dataset;
  dataset.name = "mixed";
  dataset.trajectories.push_back(
      make_trajectory("a", {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0},
                            {2.0, 0.0, 0.0}, {3.0, 0.0, 0.0}}));
  dataset.trajectories.push_back(
      make_trajectory("b", {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}}));
  try {
    score_dataset(dataset, SpectralConfig{});
    FAIL("expected mixed dimensionality error");
  } catch (const ValidationError& err) {
    const std::string what = err.what();
    CHECK(what.find("'b'") != std::string::npos);
    CHECK(what.find("mixed dimensionality") != std::string::npos);
  }
}

TEST_CASE("score_dataset rejects an empty dataset") {
  Dataset dataset;
  dataset.name = "empty";
  CHECK_THROWS_AS(score_dataset(dataset, SpectralConfig{}), ValidationError);
}

TEST_CASE("fingerprint tracks the configuration") {
  const std::string base = fingerprint(SpectralConfig{});
  CHECK(base.size() == 16);
  CHECK(fingerprint(SpectralConfig{}) == base);
  CHECK(fingerprint(SpectralConfig{.detrend = Detrend::mean}) != base);
  CHECK(fingerprint(SpectralConfig{.include_dc = false}) != base);
  CHECK(fingerprint(SpectralConfig{.length_normalize =
                                       LengthNormalize::per_sample}) != base);
}

}  // TEST_SUITE
