#pragma once

#include <cstdint>
#include <random>

#include "micropush/geometry.hpp"

namespace micropush::testing {

/// Seeded generator for hand-rolled property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Position2 point(double lo = -500.0, double hi = 500.0) { return {uniform(lo, hi), uniform(lo, hi)}; }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace micropush::testing
