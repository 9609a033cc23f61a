#pragma once

// High-precision reference eigensolver. It shares no code path with the
// production solver: eigenvalues are bracketed by plain bisection on the
// secular function evaluated in MPFR arithmetic.

#include <mpfr.h>

#include <cstddef>
#include <string>
#include <vector>

#include "dpr1/core.hpp"
#include "dpr1/secular.hpp"

namespace dpr1 {

// Value-semantic wrapper around mpfr_t. Results of binary operations carry
// the larger of the operand precisions.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 256);
  BigFloat(double x, mpfr_prec_t prec);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  // Exact sum of the two parts when prec is large enough.
  static BigFloat from_dd(const DoubleDouble& x, mpfr_prec_t prec);
  static BigFloat parse(const std::string& text, mpfr_prec_t prec);

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }
  double to_double() const noexcept;
  // Scientific notation with the given number of significant digits.
  std::string to_string(int digits) const;
  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  friend BigFloat operator-(BigFloat a);

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  void widen_to(const BigFloat& o);

  mpfr_t v_;
};

BigFloat abs(BigFloat x);
BigFloat sqrt(BigFloat x);

// |x - ref| / |ref| rounded to double; |x| when ref is zero.
double relative_error(double x, const BigFloat& ref);
double relative_error(const BigFloat& x, const BigFloat& ref);

inline constexpr int kDefaultOracleDigits = 34;

// Working precision in bits used for a matrix at the requested digits.
mpfr_prec_t oracle_precision(const DPR1Matrix& a, int digits);

// Eigenvalues lambda_1 > ... > lambda_n, each bracketed to a width of at most
// 10^-digits times min(|lambda|, distance to either neighbouring pole).
// Throws Error(invalid_argument) for digits < 16.
std::vector<BigFloat> oracle_eigvals(const DPR1Matrix& a, int digits = kDefaultOracleDigits);

// Unit eigenvector x_i = zeta_i / (d_i - lambda), normalized in the
// precision of lambda.
std::vector<BigFloat> oracle_eigvec(const DPR1Matrix& a, const BigFloat& lambda);

// Extreme eigenvalue of an arrowhead matrix whose double entries are taken
// as exact, by bisection on its secular function in high precision.
BigFloat oracle_arrowhead_extreme(const ArrowheadMatrix& m, Side side,
                                  int digits = kDefaultOracleDigits);

}  // namespace dpr1
