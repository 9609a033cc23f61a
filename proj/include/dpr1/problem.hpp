#pragma once

// Solving arbitrary (d, z, rho) input: reduction to ordered irreducible form,
// the eigensolver on the core, and mapping back to input coordinates.

#include <cstddef>
#include <optional>
#include <vector>

#include "dpr1/core.hpp"
#include "dpr1/solver.hpp"

namespace dpr1 {

struct SolveOptions {
  SolverConfig solver{};
  ReduceOptions reduce{};
  unsigned threads = 1;
};

struct Measures {
  double O = 0.0;
  double R = 0.0;
};

// Eigenpairs of the input matrix. Core eigenpairs come first in decreasing
// order of the core eigenvalues (increasing when the input had rho < 0),
// followed by the deflated pairs in the order reduce produced them.
struct Solution {
  std::size_t n = 0;
  // One-based positions of the pairs within the full ordering; 1..n for a
  // full solve.
  std::vector<std::size_t> index;
  std::vector<double> lambda;
  std::vector<double> sigma;
  std::vector<double> mu;
  // vectors[j] is the unit eigenvector for lambda[j], length n.
  std::vector<std::vector<double>> vectors;
  std::vector<SolveDiagnostics> diags;
  std::optional<Measures> measures;

  std::size_t count() const noexcept { return lambda.size(); }
};

Solution solve(const RawInput& input, const SolveOptions& opts = {});

// Single eigenpair at one-based position k of the ordering used by solve.
// Throws Error(invalid_argument) when k is out of range.
Solution solve_one(const RawInput& input, std::size_t k, const SolveOptions& opts = {});

// O = max_j ||V^T v_j - e_j||_2 / (n eps) and
// R = max_j ||A v_j - lambda_j v_j||_2 / (n eps ||A||_2) with ||A||_2 taken
// as max |lambda_j|. A v and V^T v are accumulated in double-double, so the
// measures describe the stored vectors rather than the rounding of their
// evaluation. For a partial solution only the given columns enter both
// maxima and the orthogonality check runs over those columns.
Measures compute_measures(const RawInput& a, const std::vector<double>& lambda,
                          const std::vector<std::vector<double>>& vectors);
Measures compute_measures(const DPR1Matrix& a, const std::vector<double>& lambda,
                          const std::vector<std::vector<double>>& vectors);

}  // namespace dpr1
