#pragma once

// Domain types for diagonal-plus-rank-one (DPR1) eigenproblems and the
// preprocessing that brings arbitrary input into ordered irreducible form.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dpr1/ddarith.hpp"
#include "dpr1/error.hpp"

namespace dpr1 {

inline constexpr double kEpsM = 0x1p-52;
inline constexpr std::size_t kNoPole = static_cast<std::size_t>(-1);

// Unchecked (d, z, rho) as read from a file or handed over by a caller.
// Only shape and finiteness have been verified.
struct RawInput {
  std::vector<double> d;
  std::vector<double> z;
  double rho = 1.0;

  std::size_t size() const noexcept { return d.size(); }
};

// Throws Error(invalid_argument) on a length mismatch, an empty problem, a
// non-finite entry or rho == 0.
RawInput validate(std::vector<double> d, std::vector<double> z, double rho);

// A = diag(d) + rho * z * z^T in ordered irreducible form:
// rho > 0, d_1 > d_2 > ... > d_n, every zeta_i != 0.
class DPR1Matrix {
 public:
  DPR1Matrix(std::vector<double> d, std::vector<double> z, double rho);

  std::size_t size() const noexcept { return d_.size(); }
  std::span<const double> d() const noexcept { return d_; }
  std::span<const double> z() const noexcept { return z_; }
  double d(std::size_t i) const { return d_[i]; }
  double z(std::size_t i) const { return z_[i]; }
  double rho() const noexcept { return rho_; }

  friend bool operator==(const DPR1Matrix&, const DPR1Matrix&) = default;

 private:
  std::vector<double> d_;
  std::vector<double> z_;
  double rho_;
};

// Permuted arrowhead matrix (A - d_i I)^{-1}. The arrow sits at position
// arrow_index of the full matrix; delta and w hold the remaining n-1 rows in
// their original order (D_1^{-1} block first, then D_2^{-1}).
struct ArrowheadMatrix {
  std::vector<double> delta;
  std::vector<double> w;
  double b = 0.0;
  // Extended value of the tip when it was evaluated in double-double;
  // b == b_dd.hi in that case, otherwise b_dd == {b, 0}.
  DoubleDouble b_dd{};
  std::size_t arrow_index = 0;

  std::size_t size() const noexcept { return delta.size() + 1; }
};

struct GivensRotation {
  std::size_t keep = 0;    // index receiving hypot(zeta_keep, zeta_zeroed)
  std::size_t zeroed = 0;  // index whose zeta is annihilated
  double c = 1.0;
  double s = 0.0;
};

struct DeflatedPair {
  double lambda = 0.0;       // eigenvalue of the input matrix
  std::size_t source = 0;    // input index whose pole produced it
  std::vector<double> v;     // unit eigenvector in input coordinates
};

struct ReductionResult {
  std::optional<DPR1Matrix> core;
  // permutation[c] is the input index of core entry c.
  std::vector<std::size_t> permutation;
  bool negated = false;
  std::vector<DeflatedPair> deflated;
  std::vector<GivensRotation> rotations;
  std::size_t input_size = 0;

  std::size_t core_size() const noexcept {
    return core ? core->size() : 0;
  }
  // Eigenvalue of the input matrix for a core eigenvalue.
  double to_original(double core_lambda) const noexcept {
    return negated ? -core_lambda : core_lambda;
  }
  // Eigenvector of the input matrix for a core eigenvector.
  std::vector<double> to_original(std::span<const double> core_vector) const;
};

struct ReduceOptions {
  // |zeta_i| <= deflation_tol * ||z||_inf deflates e_i.
  double deflation_tol = 0.0;
  // |d_i - d_j| <= tie_tol * |d_i| is treated as a repeated pole.
  double tie_tol = 0.0;
};

ReductionResult reduce(const RawInput& input, const ReduceOptions& opts = {});

// Row-major dense symmetric matrix; only used for verification.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

DenseMatrix materialize(std::span<const double> d, std::span<const double> z,
                        double rho);
DenseMatrix materialize(const DPR1Matrix& a);
DenseMatrix materialize(const RawInput& a);

enum class Remedy { none, r1, r2, recompute_via_inverse };

std::string_view to_string(Remedy r) noexcept;

struct EigenPair {
  double lambda = 0.0;
  std::vector<double> v;
  // lambda == sigma + mu in binary64; (sigma, mu) carries the eigenvalue to
  // roughly twice the working precision.
  double sigma = 0.0;
  double mu = 0.0;
};

struct SolveDiagnostics {
  double kappa_nu = 0.0;
  double K_b = 0.0;
  double K_z = 0.0;
  double K_nu = 0.0;
  bool used_double_b = false;
  Remedy used_remedy = Remedy::none;
  std::size_t bisection_iters = 0;
  double nu = 0.0;
  // Index of the pole used as shift, or kNoPole for a non-pole shift.
  std::size_t shift_index = 0;
  bool deflated = false;
};

}  // namespace dpr1
