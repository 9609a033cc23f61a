#pragma once

// Error-free transformations and double-double arithmetic.
//
// These routines rely on every operation being rounded exactly once in
// binary64. Builds must not enable fast-math or FMA contraction; the library
// target adds -ffp-contract=off for its consumers.

#ifdef __FAST_MATH__
#error "fast math breaks the error-free transformations in ddarith.hpp"
#endif

#include <cmath>
#include <span>

namespace dpr1 {

// Unevaluated sum hi + lo with hi == fl(hi + lo).
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT implicit
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const noexcept { return hi + lo; }

  friend bool operator==(const DoubleDouble&, const DoubleDouble&) = default;
};

namespace dd {

// hi + lo == a + b exactly, hi == fl(a + b).
inline DoubleDouble two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

// Requires |a| >= |b| (or a == 0).
inline DoubleDouble quick_two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double e = b - (s - a);
  return {s, e};
}

inline DoubleDouble two_diff(double a, double b) noexcept {
  const double s = a - b;
  const double bb = s - a;
  const double e = (a - (s - bb)) - (b + bb);
  return {s, e};
}

namespace detail {

// Veltkamp splitting: a == hi + lo with both halves fitting in 26 bits.
inline void split(double a, double& hi, double& lo) noexcept {
  constexpr double kSplitter = 134217729.0;  // 2^27 + 1
  constexpr double kThreshold = 0x1p996;
  if (a > kThreshold || a < -kThreshold) {
    a *= 0x1p-28;
    const double t = kSplitter * a;
    hi = t - (t - a);
    lo = a - hi;
    hi *= 0x1p28;
    lo *= 0x1p28;
  } else {
    const double t = kSplitter * a;
    hi = t - (t - a);
    lo = a - hi;
  }
}

}  // namespace detail

// hi + lo == a * b exactly (barring underflow of the residual).
inline DoubleDouble two_prod(double a, double b) noexcept {
  const double p = a * b;
#if defined(__FMA__) || defined(__FP_FAST_FMA)
  const double e = std::fma(a, b, -p);
#else
  double ah, al, bh, bl;
  detail::split(a, ah, al);
  detail::split(b, bh, bl);
  const double e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
#endif
  return {p, e};
}

inline DoubleDouble neg(const DoubleDouble& x) noexcept { return {-x.hi, -x.lo}; }

inline DoubleDouble add(const DoubleDouble& x, const DoubleDouble& y) noexcept {
  DoubleDouble s = two_sum(x.hi, y.hi);
  const DoubleDouble t = two_sum(x.lo, y.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble sub(const DoubleDouble& x, const DoubleDouble& y) noexcept {
  return add(x, neg(y));
}

inline DoubleDouble mul(const DoubleDouble& x, const DoubleDouble& y) noexcept {
  DoubleDouble p = two_prod(x.hi, y.hi);
  p.lo += x.hi * y.lo + x.lo * y.hi;
  return quick_two_sum(p.hi, p.lo);
}

// Caller guarantees y != 0; div() in ddarith.cpp checks and throws.
inline DoubleDouble div_unchecked(const DoubleDouble& x,
                                  const DoubleDouble& y) noexcept {
  const double q1 = x.hi / y.hi;
  DoubleDouble r = sub(x, mul(DoubleDouble(q1), y));
  const double q2 = r.hi / y.hi;
  r = sub(r, mul(DoubleDouble(q2), y));
  const double q3 = r.hi / y.hi;
  return add(quick_two_sum(q1, q2), DoubleDouble(q3));
}

// Throws Error(solver) when y is zero.
DoubleDouble div(const DoubleDouble& x, const DoubleDouble& y);

// sum_k num_k / den_k with every quotient and every partial sum carried in
// double-double, accumulated left to right. Throws on a zero denominator or
// mismatched lengths.
DoubleDouble sum_of_quotients(std::span<const double> num,
                              std::span<const double> den);
DoubleDouble sum_of_quotients(std::span<const DoubleDouble> num,
                              std::span<const DoubleDouble> den);

}  // namespace dd

inline DoubleDouble operator+(const DoubleDouble& x, const DoubleDouble& y) noexcept {
  return dd::add(x, y);
}
inline DoubleDouble operator-(const DoubleDouble& x, const DoubleDouble& y) noexcept {
  return dd::sub(x, y);
}
inline DoubleDouble operator*(const DoubleDouble& x, const DoubleDouble& y) noexcept {
  return dd::mul(x, y);
}
inline DoubleDouble operator-(const DoubleDouble& x) noexcept { return dd::neg(x); }

}  // namespace dpr1
