#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace specrank {

// Seeded randomness with byte-portable output. std::mt19937_64 produces a
// standardized sequence; the distribution transforms below are written out
// explicitly because the <random> distributions are implementation-defined.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % n;
  }

  // Uniform direction on the unit sphere.
  std::array<double, 3> unit_vector();

 private:
  std::mt19937_64 engine_;
};

// Derives an independent child seed from a master seed and a stream index
// (splitmix64 finalizer). Lets per-demo generators run in any order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace specrank
