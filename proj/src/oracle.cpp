#include "dpr1/oracle.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <utility>

namespace dpr1 {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double x, mpfr_prec_t prec) {
  mpfr_init2(v_, std::max<mpfr_prec_t>(prec, 53));
  mpfr_set_d(v_, x, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, 53);
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_dd(const DoubleDouble& x, mpfr_prec_t prec) {
  BigFloat r(x.hi, prec);
  mpfr_add_d(r.v_, r.v_, x.lo, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::parse(const std::string& text, mpfr_prec_t prec) {
  BigFloat r(prec);
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
    throw Error(ErrorCode::parse, "not a decimal number: '" + text + "'");
  }
  return r;
}

double BigFloat::to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

std::string BigFloat::to_string(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", std::max(digits, 1) - 1, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

void BigFloat::widen_to(const BigFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  widen_to(o);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
  widen_to(o);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
  widen_to(o);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
  widen_to(o);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat operator-(BigFloat a) {
  mpfr_neg(a.v_, a.v_, MPFR_RNDN);
  return a;
}

BigFloat abs(BigFloat x) {
  mpfr_abs(x.get(), x.get(), MPFR_RNDN);
  return x;
}

BigFloat sqrt(BigFloat x) {
  mpfr_sqrt(x.get(), x.get(), MPFR_RNDN);
  return x;
}

double relative_error(const BigFloat& x, const BigFloat& ref) {
  BigFloat diff = abs(x - ref);
  if (!ref.is_zero()) diff /= abs(ref);
  return diff.to_double();
}

double relative_error(double x, const BigFloat& ref) {
  return relative_error(BigFloat(x, ref.precision()), ref);
}

namespace {

int exponent_of(double x) { return x == 0.0 ? 0 : std::ilogb(x); }

// Bisection in precision prec on (lo, hi) for a function that is positive
// left of the root and nonpositive right of it (or the reverse when
// positive_left is false). sign(mid) returns -1, 0 or +1; 0 ends the search.
// done(lo, hi, mid) decides convergence.
template <typename SignFn, typename DoneFn>
BigFloat hp_bisect(BigFloat lo, BigFloat hi, bool positive_left, mpfr_prec_t prec,
                   SignFn&& sign, DoneFn&& done) {
  BigFloat mid(prec);
  const long max_iters = 8L * prec + 4096;
  for (long it = 0; it < max_iters; ++it) {
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    if (!(lo < mid) || !(mid < hi)) break;
    if (done(lo, hi, mid)) return mid;
    const int s = sign(mid);
    if (s == 0) return mid;
    if ((s > 0) == positive_left) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

BigFloat tolerance(int digits, mpfr_prec_t prec) {
  BigFloat t(1.0, prec);
  BigFloat ten(10.0, prec);
  mpfr_pow_si(t.get(), ten.get(), -digits, MPFR_RNDN);
  return t;
}

}  // namespace

mpfr_prec_t oracle_precision(const DPR1Matrix& a, int digits) {
  int emax = INT_MIN, emin = INT_MAX;
  auto note = [&](double x) {
    if (x == 0.0) return;
    emax = std::max(emax, exponent_of(x));
    emin = std::min(emin, exponent_of(x));
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    note(a.d(i));
    note(a.z(i) * a.z(i));
    note(a.z(i));
    if (i > 0) note(a.d(i - 1) - a.d(i));
  }
  note(a.rho());
  const int spread = emax == INT_MIN ? 0 : emax - emin;
  const double bits = std::ceil(digits * std::log2(10.0));
  return static_cast<mpfr_prec_t>(bits) + 192 + 2 * spread;
}

std::vector<BigFloat> oracle_eigvals(const DPR1Matrix& a, int digits) {
  if (digits < 16) {
    throw Error(ErrorCode::invalid_argument, "oracle_eigvals: digits must be at least 16");
  }
  const std::size_t n = a.size();
  const mpfr_prec_t prec = oracle_precision(a, digits);
  const BigFloat tol = tolerance(digits, prec);
  const BigFloat rho(a.rho(), prec);

  std::vector<BigFloat> d, z2;
  d.reserve(n);
  z2.reserve(n);
  BigFloat znorm2(prec);
  for (std::size_t i = 0; i < n; ++i) {
    d.emplace_back(a.d(i), prec);
    BigFloat zi(a.z(i), prec);
    z2.push_back(zi * zi);
    znorm2 += z2.back();
  }

  std::vector<BigFloat> out;
  out.reserve(n);
  if (n == 1) {
    out.push_back(d[0] + rho * z2[0]);
    return out;
  }

  BigFloat s(prec), term(prec);
  auto f_sign = [&](const BigFloat& x) {
    mpfr_set_zero(s.get(), 1);
    for (std::size_t i = 0; i < n; ++i) {
      mpfr_sub(term.get(), d[i].get(), x.get(), MPFR_RNDN);
      mpfr_div(term.get(), z2[i].get(), term.get(), MPFR_RNDN);
      mpfr_add(s.get(), s.get(), term.get(), MPFR_RNDN);
    }
    mpfr_mul(s.get(), s.get(), rho.get(), MPFR_RNDN);
    mpfr_add_ui(s.get(), s.get(), 1, MPFR_RNDN);
    return mpfr_sgn(s.get());
  };

  // f rises from -inf just above d_k to +inf just below d_{k-1}.
  for (std::size_t k = 0; k < n; ++k) {
    const BigFloat lo = d[k];
    const bool bounded_above = k > 0;
    const BigFloat hi = bounded_above ? d[k - 1] : d[0] + rho * znorm2;
    BigFloat scale(prec), gap(prec);
    auto done = [&](const BigFloat&, const BigFloat& h, const BigFloat& mid) {
      const BigFloat width = h - mid;
      scale = abs(mid);
      gap = mid - lo;
      if (gap < scale) scale = gap;
      if (bounded_above) {
        gap = hi - mid;
        if (gap < scale) scale = gap;
      }
      return width * BigFloat(2.0, prec) <= tol * scale;
    };
    out.push_back(hp_bisect(lo, hi, false, prec, f_sign, done));
  }
  return out;
}

std::vector<BigFloat> oracle_eigvec(const DPR1Matrix& a, const BigFloat& lambda) {
  const mpfr_prec_t prec = lambda.precision();
  std::vector<BigFloat> x;
  x.reserve(a.size());
  BigFloat norm2(prec);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const BigFloat den = BigFloat(a.d(i), prec) - lambda;
    if (den.is_zero()) {
      throw Error(ErrorCode::invalid_argument, "oracle_eigvec: lambda equals a pole");
    }
    x.push_back(BigFloat(a.z(i), prec) / den);
    norm2 += x.back() * x.back();
  }
  const BigFloat norm = sqrt(norm2);
  for (auto& xi : x) xi /= norm;
  return x;
}

BigFloat oracle_arrowhead_extreme(const ArrowheadMatrix& m, Side side, int digits) {
  int emax = exponent_of(m.b), emin = emax;
  for (std::size_t k = 0; k < m.delta.size(); ++k) {
    for (double v : {m.delta[k], m.w[k]}) {
      emax = std::max(emax, exponent_of(v));
      emin = std::min(emin, exponent_of(v));
    }
  }
  const mpfr_prec_t prec =
      static_cast<mpfr_prec_t>(std::ceil(digits * std::log2(10.0))) + 192 + 4 * (emax - emin);
  const BigFloat b(m.b, prec);
  if (m.delta.empty()) return b;

  std::vector<BigFloat> delta, w2;
  BigFloat wsum(prec), dmax(m.delta[0], prec), dmin(m.delta[0], prec);
  for (std::size_t k = 0; k < m.delta.size(); ++k) {
    delta.emplace_back(m.delta[k], prec);
    const BigFloat wk(m.w[k], prec);
    w2.push_back(wk * wk);
    wsum += abs(wk);
    if (delta.back() > dmax) dmax = delta.back();
    if (delta.back() < dmin) dmin = delta.back();
  }

  BigFloat s(prec), term(prec);
  auto g_sign = [&](const BigFloat& nu) {
    mpfr_sub(s.get(), b.get(), nu.get(), MPFR_RNDN);
    for (std::size_t k = 0; k < delta.size(); ++k) {
      mpfr_sub(term.get(), delta[k].get(), nu.get(), MPFR_RNDN);
      mpfr_div(term.get(), w2[k].get(), term.get(), MPFR_RNDN);
      mpfr_sub(s.get(), s.get(), term.get(), MPFR_RNDN);
    }
    return mpfr_sgn(s.get());
  };

  // Gershgorin: every eigenvalue lies within max|entries| row sums of the
  // diagonal, so this generous interval encloses the extremes.
  const BigFloat one(1.0, prec);
  const BigFloat tol = tolerance(digits, prec);
  BigFloat lo(prec), hi(prec), pole(prec);
  if (side == Side::rightmost) {
    pole = dmax;
    lo = b > dmax ? b : dmax;
    hi = lo + wsum + abs(lo) + one;
  } else {
    pole = dmin;
    hi = b < dmin ? b : dmin;
    lo = hi - wsum - abs(hi) - one;
  }
  BigFloat scale(prec), gap(prec);
  auto done = [&](const BigFloat& l, const BigFloat& h, const BigFloat& mid) {
    scale = abs(mid);
    gap = abs(mid - pole);
    if (gap < scale) scale = gap;
    return (h - l) <= tol * scale;
  };
  // g is strictly decreasing outside the extreme poles.
  return hp_bisect(lo, hi, true, prec, g_sign, done);
}

}  // namespace dpr1
