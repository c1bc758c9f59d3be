#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace sdsc {

/// Seeded standard-normal stream.
///
/// The algorithm is pinned so that noise fixtures are reproducible by any
/// implementation: std::mt19937_64 seeded with `seed`, each 64-bit draw
/// mapped to a uniform u = (x >> 11) * 2^-53 in [0, 1), and pairs
/// (u1, u2) turned into two normals by Box-Muller,
///   z0 = sqrt(-2 ln(1 - u1)) * cos(2 pi u2),
///   z1 = sqrt(-2 ln(1 - u1)) * sin(2 pi u2),
/// emitted in the order z0, z1.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace sdsc
