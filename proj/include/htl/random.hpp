#pragma once
// Deterministic random numbers for property tests and random arc families.
// mt19937_64 has a standard-fixed output sequence; the uniform mapper below is
// hand-rolled because std::uniform_real_distribution is not portable across
// standard libraries, and reports must reproduce byte-for-byte given a seed.

#include <cstdint>
#include <random>

namespace htl {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform double in [0, 1), 53 random bits
  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  std::uint64_t bits() { return gen_(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n)) %
           n;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace htl
