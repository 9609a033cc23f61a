#pragma once

// Test matrices: the worked examples and a seeded random family.

#include <cstddef>
#include <cstdint>

#include "dpr1/core.hpp"

namespace dpr1 {

// d = [1e10, 5, 4e-3, 0, -4e-3, -5], z = [1e10, 1, 1, 1e-7, 1, 1], rho = 1.
RawInput example1();

// d = 1 + [40, 30, 20, 10] eps, z = [1, 2, 2, 1], rho = 1.
RawInput example2();

// d = [10/3, 2 + 1e-7, 2 - 1e-7, 1], z = [2, 1e-7, 1e-7, 2], rho = 1.
RawInput example3();

inline constexpr std::size_t kExample4DefaultSize = 202;

// d = [10/3, 2 + m beta, ..., 2 + beta, 2 - beta, ..., 2 - m beta, 1],
// z = [2, beta, ..., beta, 2], rho = 1, with n = 2m + 2. Throws
// Error(invalid_argument) unless n is even, n >= 4, beta > 0 and the poles
// come out strictly decreasing.
RawInput example4(double beta, std::size_t n = kExample4DefaultSize);

struct RandomParams {
  std::size_t n = 10;
  std::uint64_t seed = 1;
  // Pole magnitudes span 10^-spread/2 .. 10^spread/2.
  double spread = 8.0;
};

// Poles with random signs and log-spaced magnitudes (one per slot of width
// spread/n decades, jittered within the middle half of the slot), so
// neighbours differ by a relative gap of at least 10^(spread/(2n)) - 1, which
// must be >= 1e-3. z entries are log-uniform in [1e-8, 1e8] with random
// signs; rho = 1. The sequence depends only on the seed.
RawInput random_matrix(const RandomParams& p);

}  // namespace dpr1
