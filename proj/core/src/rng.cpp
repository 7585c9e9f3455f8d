#include "specrank/rng.hpp"

#include <cmath>
#include <numbers>

namespace specrank {

std::array<double, 3> Random::unit_vector() {
  // cos(polar) uniform in [-1,1), azimuth uniform in [0, 2*pi).
  const double cos_theta = uniform(-1.0, 1.0);
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  const double phi = uniform(0.0, 2.0 * std::numbers::pi);
  return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace specrank
