#pragma once

// Secular functions of DPR1 and arrowhead matrices and bisection for their
// extreme eigenvalues.

#include <cstddef>
#include <vector>

#include "dpr1/core.hpp"

namespace dpr1 {

enum class Side { leftmost, rightmost };

inline Side opposite(Side s) noexcept {
  return s == Side::leftmost ? Side::rightmost : Side::leftmost;
}

struct BisectionResult {
  double value = 0.0;
  std::size_t iters = 0;
  // Final bracket; value is its midpoint.
  double lo = 0.0;
  double hi = 0.0;
};

inline constexpr std::size_t kDefaultMaxBisectIters = 1100;

// f(lambda) = 1 + rho * sum zeta_i^2 / (d_i - lambda).
// Throws Error(invalid_argument) when lambda equals a pole.
double eval_f(const DPR1Matrix& a, double lambda);

// g(nu) = b - nu - w^T (Delta - nu I)^{-1} w.
// Throws Error(invalid_argument) when nu equals an entry of delta.
double eval_g(const ArrowheadMatrix& m, double nu);

// Extreme eigenvalue of an arrowhead matrix. The bracket starts at
// [M, M + ||w||_1 + |b - max(delta)|] with M = max(max(delta), b) for the
// rightmost eigenvalue (mirrored for the leftmost) and is halved until its
// width is at most 2 eps |midpoint| or the endpoints are adjacent.
BisectionResult bisect_extreme(const ArrowheadMatrix& m, Side side,
                               std::size_t max_iters = kDefaultMaxBisectIters);

// Sign (-1, 0, +1) of F = 1 + rho sum zeta_i^2 / (dbar_i - tau) where
// dbar = d - d_k and tau = dbar_{k-1} / 2. Zero-based k, 1 <= k < n.
// Positive means lambda_k lies in the lower half of (d_k, d_{k-1}).
int eval_F_midpoint(const DPR1Matrix& a, std::size_t k);

// B = diag(d) + gamma u u^T without ordering assumptions; produced by
// inverting a (possibly shifted) DPR1 matrix.
struct DPR1Form {
  std::vector<double> d;
  std::vector<double> u;
  double gamma = 0.0;

  std::size_t size() const noexcept { return d.size(); }
};

// 1 + gamma * sum u_j^2 / (d_j - x). Throws when x equals a pole.
double eval_dpr1_form(const DPR1Form& b, double x);

// Extreme eigenvalue of a DPR1 form by bisection on its secular function.
// Requires distinct poles and nonzero u, gamma.
BisectionResult bisect_extreme(const DPR1Form& b, Side side,
                               std::size_t max_iters = kDefaultMaxBisectIters);

}  // namespace dpr1
