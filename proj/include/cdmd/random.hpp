#pragma once

#include <cstdint>
#include <random>

#include "cdmd/linalg.hpp"

namespace cdmd {

std::uint64_t splitmix64(std::uint64_t x);

// Scheduler-independent seed for ensemble member `index`.
std::uint64_t member_seed(std::uint64_t master, std::uint64_t index);

// mt19937_64 with a fixed bit-to-double mapping, so draws match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double phase() { return uniform(-M_PI, M_PI); }
  // Modulus uniform in [lo, hi], phase uniform.
  cplx polar(double lo, double hi) { const double r = uniform(lo, hi); return std::polar(r, phase()); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace cdmd
