#pragma once

// Forward stable eigensolver for ordered irreducible DPR1 matrices.
//
// Every eigenpair is computed independently: the matrix is shifted to the
// pole nearest the wanted eigenvalue, the shifted matrix is inverted in
// closed form (a permuted arrowhead), and the extreme eigenvalue of that
// inverse is found by bisection. Only the arrow tip b may need double the
// working precision; it is recomputed in double-double when the condition
// estimate kappa_nu demands it.
//
// Indices in this header are zero-based.

#include <cstddef>
#include <optional>
#include <vector>

#include "dpr1/core.hpp"
#include "dpr1/secular.hpp"

namespace dpr1 {

struct SolverConfig {
  // b is recomputed in double-double when kappa_nu > kappa_threshold_factor * n.
  double kappa_threshold_factor = 10.0;
  // Remedies R1/R2 engage when K_nu exceeds this.
  double K_nu_threshold = 10.0;
  // lambda is recomputed from A^{-1} when
  // |lambda| < zero_proximity_factor * min(|lambda - d_k|, |lambda - d_{k-1}|).
  double zero_proximity_factor = 1e-3;
  std::size_t max_bisect_iters = kDefaultMaxBisectIters;
  // false reproduces the variant that never leaves working precision.
  bool use_double = true;

  // Throws Error(invalid_argument) unless every threshold is positive.
  void check() const;
};

// Index of the pole nearest lambda_k: 0 for k == 0, otherwise k or k - 1
// depending on the sign of F at the midpoint of (d_k, d_{k-1}).
std::size_t shift_select(const DPR1Matrix& a, std::size_t k);

struct ShiftedInverse {
  ArrowheadMatrix arrow;
  // Sum of the magnitudes of the tip terms, K_b * |b|; finite when b == 0.
  double tip_scale = 0.0;
  double K_b = 0.0;
  double K_z = 0.0;
  double kappa_nu = 0.0;
};

// (A - d_i I)^{-1} as an arrowhead together with the condition estimates.
// With use_double the whole tip formula is evaluated in double-double and
// rounded once; K_b is then taken from the double-double sums.
ShiftedInverse invert_shifted(const DPR1Matrix& a, std::size_t i, bool use_double);

struct ShiftedVector {
  std::vector<double> x;  // unnormalized
  std::vector<double> v;  // x / ||x||_2
};

// Eigenvector of A for eigenvalue d_i + mu: x_j = zeta_j / ((d_j - d_i) - mu),
// x_i = -zeta_i / mu. Throws Error(invalid_argument) for mu == 0.
ShiftedVector vector_from_mu(const DPR1Matrix& a, std::size_t i, double mu);

// A^{-1} = D^{-1} + gamma (D^{-1} z)(D^{-1} z)^T with
// gamma = -rho / (1 + rho z^T D^{-1} z). Returns nullopt when the
// denominator evaluates to zero (A numerically singular). Throws
// Error(internal) when a pole is zero.
std::optional<DPR1Form> invert_dpr1(const DPR1Matrix& a, bool use_double);

// (A - sigma I)^{-1} in DPR1 form. sigma may carry a low part; the pole
// differences are then formed in double-double and rounded. Throws
// Error(invalid_argument) when sigma hits a pole, and returns nullopt when
// A - sigma I is numerically singular.
std::optional<DPR1Form> nonstandard_shift(const DPR1Matrix& a, const DoubleDouble& sigma,
                                          bool use_double);

struct EigenSolution {
  EigenPair pair;
  SolveDiagnostics diag;
};

// k-th eigenpair, lambda_1 > lambda_2 > ... in zero-based order.
EigenSolution eigpair(const DPR1Matrix& a, std::size_t k, const SolverConfig& cfg = {});

struct Spectrum {
  std::vector<EigenPair> pairs;
  std::vector<SolveDiagnostics> diags;
};

// All eigenpairs. threads > 1 distributes eigenpairs over worker threads;
// the result does not depend on the thread count. Errors carry the
// one-based index of the failing eigenpair.
Spectrum eig_all(const DPR1Matrix& a, const SolverConfig& cfg = {}, unsigned threads = 1);

}  // namespace dpr1
