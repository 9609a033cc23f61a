#pragma once

// Cost of the double-double recomputation: the same full solve timed with
// and without it.

#include <cstddef>

#include "dpr1/core.hpp"
#include "dpr1/problem.hpp"

namespace dpr1 {

struct BenchReport {
  std::size_t n = 0;
  std::size_t repeat = 0;
  double median_dd_seconds = 0.0;
  double median_plain_seconds = 0.0;
  // median_dd_seconds / median_plain_seconds
  double ratio = 0.0;
  // Eigenpairs whose arrow tip was recomputed in double-double.
  std::size_t dd_count = 0;
};

// opts.solver.use_double is overridden for the two runs. Throws
// Error(invalid_argument) for repeat == 0.
BenchReport bench(const RawInput& a, const SolveOptions& opts, std::size_t repeat);

}  // namespace dpr1
