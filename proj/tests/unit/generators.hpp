#pragma once

// Seeded generators shared by the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "qclab/chain.hpp"

namespace qclab::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline PeriodicField random_field(long atoms, double scale = 1.0) {
  std::vector<double> v(static_cast<std::size_t>(atoms));
  for (auto& x : v) x = uniform(-scale, scale);
  return PeriodicField(std::move(v));
}

/// Mean-zero random field.
inline PeriodicField random_mean_zero(long atoms) {
  PeriodicField u = random_field(atoms);
  const double m = u.mean();
  for (auto& x : u.values()) x -= m;
  return u;
}

/// Small integers stored as doubles: sums of differences stay exact.
inline PeriodicField random_integer_field(long atoms) {
  std::vector<double> v(static_cast<std::size_t>(atoms));
  for (auto& x : v) x = static_cast<double>(uniform_int(-1000, 1000));
  return PeriodicField(std::move(v));
}

}  // namespace qclab::testing
