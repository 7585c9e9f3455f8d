#include "specrank/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "specrank/errors.hpp"
#include "specrank/rng.hpp"
#include "test_support.hpp"

using namespace specrank;
using test_support::make_trajectory;
using test_support::random_trajectory;
using test_support::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

Trajectory polynomial_ramp(int degree, std::size_t steps) {
  std::vector<std::vector<double>> samples(steps, std::vector<double>(3, 0.0));
  for (std::size_t t = 0; t < steps; ++t) {
    samples[t][0] = std::pow(static_cast<double>(t), degree);
  }
  return make_trajectory("ramp", samples);
}

// Rodrigues rotation about a unit axis.
std::vector<double> rotate(const std::vector<double>& v,
                           const std::array<double, 3>& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double dot = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2];
  std::array<double, 3> cross = {axis[1] * v[2] - axis[2] * v[1],
                                 axis[2] * v[0] - axis[0] * v[2],
                                 axis[0] * v[1] - axis[1] * v[0]};
  std::vector<double> out(3);
  for (std::size_t d = 0; d < 3; ++d) {
    out[d] = v[d] * c + cross[d] * s + axis[d] * dot * (1.0 - c);
  }
  return out;
}

}  // namespace

TEST_SUITE("kinematics") {

TEST_CASE("straight unit line over 11 uniform samples has length 1") {
  std::vector<std::vector<double>> samples(11, std::vector<double>(3, 0.0));
  for (std::size_t t = 0; t < 11; ++t) {
    samples[t][0] = 0.1 * static_cast<double>(t);
  }
  CHECK(rel_err(path_length(make_trajectory("line", samples)), 1.0) <= 1e-12);
}

TEST_CASE("constant trajectory has zero length and zero jerk") {
  const Trajectory constant = make_trajectory(
      "const", std::vector<std::vector<double>>(20, {1.0, 2.0, 3.0}));
  CHECK(path_length(constant) == 0.0);
  CHECK(mean_jerk(constant) == 0.0);
}

TEST_CASE("closed unit circle sampled at 360 points: chord sum of the 360-gon") {
  std::vector<std::vector<double>> samples;
  samples.reserve(361);
  for (int t = 0; t <= 360; ++t) {
    const double angle = 2.0 * kPi * static_cast<double>(t) / 360.0;
    samples.push_back({std::cos(angle), std::sin(angle), 0.0});
  }
  const double expected = 360.0 * 2.0 * std::sin(kPi / 360.0);
  const double actual = path_length(make_trajectory("circle", samples));
  CHECK(rel_err(actual, expected) <= 1e-9);
  // within 0.02% of the true circumference
  CHECK(rel_err(actual, 2.0 * kPi) <= 2e-4);
}

TEST_CASE("third difference of low-degree polynomials vanishes") {
  SUBCASE("constant velocity") {
    std::vector<std::vector<double>> samples(12, std::vector<double>(3, 0.0));
    for (std::size_t t = 0; t < 12; ++t) {
      samples[t] = {0.1 * static_cast<double>(t),
                    -0.3 * static_cast<double>(t), 2.0};
    }
    CHECK(mean_jerk(make_trajectory("line", samples)) <= 1e-12);
  }
  SUBCASE("constant acceleration parabola is exactly zero") {
    CHECK(mean_jerk(polynomial_ramp(2, 30)) == 0.0);
  }
}

TEST_CASE("cubic ramp t^3 has jerk 6 in every window") {
  for (std::size_t steps : {4ul, 10ul, 50ul}) {
    CHECK(mean_jerk(polynomial_ramp(3, steps)) == 6.0);
  }
}

TEST_CASE("jerk is invariant under affine time trends") {
  Random rng(17);
  const Trajectory traj = random_trajectory(rng, 40);
  Trajectory trended = traj;
  for (std::size_t t = 0; t < trended.samples.size(); ++t) {
    const double tt = static_cast<double>(t);
    trended.samples[t][0] += 1.5 + 0.25 * tt + 0.01 * tt * tt;
    trended.samples[t][1] += -2.0 + 0.1 * tt - 0.02 * tt * tt;
    trended.samples[t][2] += 0.33 - 0.4 * tt + 0.003 * tt * tt;
  }
  CHECK(rel_err(mean_jerk(trended), mean_jerk(traj)) <= 1e-9);
}

TEST_CASE("both metrics are invariant under rigid motion") {
  Random rng(23);
  const Trajectory traj = random_trajectory(rng, 50);
  const std::array<double, 3> axis = rng.unit_vector();
  const double angle = 1.234;

  Trajectory moved = traj;
  for (auto& sample : moved.samples) {
    sample = rotate(sample, axis, angle);
    sample[0] += 10.0;
    sample[1] -= 4.0;
    sample[2] += 0.5;
  }
  CHECK(rel_err(path_length(moved), path_length(traj)) <= 1e-9);
  CHECK(rel_err(mean_jerk(moved), mean_jerk(traj)) <= 1e-9);
}

TEST_CASE("both metrics scale linearly with space") {
  Random rng(29);
  const Trajectory traj = random_trajectory(rng, 25);
  for (double c : {0.5, 3.0}) {
    Trajectory scaled = traj;
    for (auto& sample : scaled.samples) {
      for (auto& v : sample) v *= c;
    }
    CHECK(rel_err(path_length(scaled), c * path_length(traj)) <= 1e-12);
    CHECK(rel_err(mean_jerk(scaled), c * mean_jerk(traj)) <= 1e-12);
  }
}

TEST_CASE("halving dt multiplies jerk by exactly 8") {
  Random rng(31);
  Trajectory traj = random_trajectory(rng, 30);
  traj.dt = 1.0;
  const double unit = mean_jerk(traj);
  traj.dt = 0.5;
  CHECK(mean_jerk(traj) == 8.0 * unit);
}

TEST_CASE("jerk needs at least four samples") {
  const Trajectory tiny =
      make_trajectory("tiny", {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0},
                               {2.0, 0.0, 0.0}});
  try {
    mean_jerk(tiny);
    FAIL("expected error");
  } catch (const ValidationError& err) {
    CHECK(std::string(err.what()).find("trajectory too short for jerk") !=
          std::string::npos);
  }
}

}  // TEST_SUITE
