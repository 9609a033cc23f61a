#include "dpr1/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dpr1 {

namespace {

struct Eval {
  double value = 0.0;
  bool at_pole = false;
};

Eval g_at(const ArrowheadMatrix& m, double nu) {
  double s = 0.0;
  for (std::size_t k = 0; k < m.delta.size(); ++k) {
    const double den = m.delta[k] - nu;
    if (den == 0.0) return {0.0, true};
    s += m.w[k] * m.w[k] / den;
  }
  return {m.b - nu - s, false};
}

Eval form_at(const DPR1Form& b, double x) {
  double s = 0.0;
  for (std::size_t k = 0; k < b.d.size(); ++k) {
    const double den = b.d[k] - x;
    if (den == 0.0) return {0.0, true};
    s += b.u[k] * b.u[k] / den;
  }
  return {1.0 + b.gamma * s, false};
}

bool converged(double lo, double hi) {
  return hi - lo <= 2.0 * kEpsM * std::abs(lo / 2.0 + hi / 2.0) ||
         std::nextafter(lo, hi) >= hi;
}

// Bisection on a function whose sign at lo is sign_lo and which changes sign
// exactly once inside (lo, hi).
template <typename Evaluator>
BisectionResult bisect(Evaluator&& eval, double lo, double hi, int sign_lo,
                       std::size_t max_iters) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi)) {
    throw Error(ErrorCode::solver, "bisection: non-finite or inverted bracket");
  }
  BisectionResult r;
  while (r.iters < max_iters && !converged(lo, hi)) {
    double mid = (lo + hi) / 2.0;
    Eval e = eval(mid);
    if (e.at_pole) {
      const double up = std::nextafter(mid, hi);
      const double down = std::nextafter(mid, lo);
      if (up < hi) {
        mid = up;
      } else if (down > lo) {
        mid = down;
      } else {
        break;
      }
      e = eval(mid);
      if (e.at_pole) break;
    }
    ++r.iters;
    const int s = e.value > 0.0 ? 1 : -1;
    if (s == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  r.lo = lo;
  r.hi = hi;
  r.value = (lo + hi) / 2.0;
  return r;
}

}  // namespace

double eval_f(const DPR1Matrix& a, double lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double den = a.d(i) - lambda;
    if (den == 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "eval_f: lambda coincides with pole " + std::to_string(i));
    }
    s += a.z(i) * a.z(i) / den;
  }
  return 1.0 + a.rho() * s;
}

double eval_g(const ArrowheadMatrix& m, double nu) {
  const Eval e = g_at(m, nu);
  if (e.at_pole) {
    throw Error(ErrorCode::invalid_argument, "eval_g: nu coincides with a diagonal entry");
  }
  return e.value;
}

BisectionResult bisect_extreme(const ArrowheadMatrix& m, Side side,
                               std::size_t max_iters) {
  if (m.delta.empty()) {
    return BisectionResult{m.b, 0, m.b, m.b};
  }
  double wsum = 0.0;
  for (double x : m.w) wsum += std::abs(x);

  double lo, hi;
  if (side == Side::rightmost) {
    const double dmax = *std::max_element(m.delta.begin(), m.delta.end());
    lo = std::max(dmax, m.b);
    hi = lo + wsum + std::abs(m.b - dmax);
  } else {
    const double dmin = *std::min_element(m.delta.begin(), m.delta.end());
    hi = std::min(dmin, m.b);
    lo = hi - wsum - std::abs(m.b - dmin);
  }
  // g is strictly decreasing outside the extreme poles, so it is positive at
  // the left end of either bracket.
  return bisect([&](double x) { return g_at(m, x); }, lo, hi, +1, max_iters);
}

int eval_F_midpoint(const DPR1Matrix& a, std::size_t k) {
  if (k == 0 || k >= a.size()) {
    throw Error(ErrorCode::invalid_argument, "eval_F_midpoint: k out of range");
  }
  const double dk = a.d(k);
  const double tau = (a.d(k - 1) - dk) / 2.0;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a.z(i) * a.z(i) / ((a.d(i) - dk) - tau);
  }
  const double F = 1.0 + a.rho() * s;
  return F > 0.0 ? 1 : (F < 0.0 ? -1 : 0);
}

double eval_dpr1_form(const DPR1Form& b, double x) {
  const Eval e = form_at(b, x);
  if (e.at_pole) {
    throw Error(ErrorCode::invalid_argument, "eval_dpr1_form: x coincides with a pole");
  }
  return e.value;
}

BisectionResult bisect_extreme(const DPR1Form& b, Side side, std::size_t max_iters) {
  const std::size_t n = b.size();
  if (n == 0 || b.u.size() != n || b.gamma == 0.0 || !std::isfinite(b.gamma)) {
    throw Error(ErrorCode::solver, "bisect_extreme: malformed DPR1 form");
  }
  if (n == 1) {
    const double x = b.d[0] + b.gamma * b.u[0] * b.u[0];
    return BisectionResult{x, 0, x, x};
  }
  double usum = 0.0;
  for (double x : b.u) usum += x * x;

  // Largest and second largest pole, smallest and second smallest.
  double p1 = -std::numeric_limits<double>::infinity(), p2 = p1;
  double q1 = std::numeric_limits<double>::infinity(), q2 = q1;
  for (double x : b.d) {
    if (x > p1) {
      p2 = p1;
      p1 = x;
    } else if (x > p2) {
      p2 = x;
    }
    if (x < q1) {
      q2 = q1;
      q1 = x;
    } else if (x < q2) {
      q2 = x;
    }
  }

  double lo, hi;
  if (side == Side::rightmost) {
    if (b.gamma > 0.0) {
      lo = p1;
      hi = p1 + b.gamma * usum;
    } else {
      lo = p2;
      hi = p1;
    }
  } else {
    if (b.gamma < 0.0) {
      lo = q1 + b.gamma * usum;
      hi = q1;
    } else {
      lo = q1;
      hi = q2;
    }
  }
  const int sign_lo = b.gamma > 0.0 ? -1 : 1;
  return bisect([&](double x) { return form_at(b, x); }, lo, hi, sign_lo, max_iters);
}

}  // namespace dpr1
