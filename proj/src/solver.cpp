#include "dpr1/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace dpr1 {

void SolverConfig::check() const {
  if (!(kappa_threshold_factor > 0.0) || !(K_nu_threshold > 0.0) ||
      !(zero_proximity_factor > 0.0) || max_bisect_iters == 0) {
    throw Error(ErrorCode::invalid_argument, "solver thresholds must be positive");
  }
}

std::size_t shift_select(const DPR1Matrix& a, std::size_t k) {
  if (k >= a.size()) throw Error(ErrorCode::invalid_argument, "shift_select: k out of range");
  if (k == 0) return 0;
  return eval_F_midpoint(a, k) >= 0 ? k : k - 1;
}

ShiftedInverse invert_shifted(const DPR1Matrix& a, std::size_t i, bool use_double) {
  const std::size_t n = a.size();
  if (i >= n) throw Error(ErrorCode::invalid_argument, "invert_shifted: index out of range");

  ShiftedInverse out;
  ArrowheadMatrix& m = out.arrow;
  m.arrow_index = i;
  m.delta.reserve(n - 1);
  m.w.reserve(n - 1);

  const double zi = a.z(i);
  const double wz = 1.0 / zi;
  const double shift = a.d(i);
  double pos = 0.0;  // z_1^T D_1^{-1} z_1
  double neg = 0.0;  // z_2^T D_2^{-1} z_2
  double zrest = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i) continue;
    const double dk = a.d(k) - shift;
    const double inv = 1.0 / dk;
    m.delta.push_back(inv);
    m.w.push_back(-a.z(k) * wz * inv);
    const double t = a.z(k) * a.z(k) / dk;
    if (dk > 0.0) {
      pos += t;
    } else {
      neg += t;
    }
    zrest += std::abs(a.z(k));
  }
  pos += 1.0 / a.rho();
  out.K_b = (pos - neg) / std::abs(pos + neg);
  out.tip_scale = (pos - neg) * wz * wz;
  out.K_z = zrest / std::abs(zi);
  m.b = (pos + neg) * wz * wz;
  m.b_dd = DoubleDouble(m.b);

  const double nd = static_cast<double>(n);
  const double sq = std::sqrt(nd);
  out.kappa_nu = std::min((nd + 4.0) * sq * out.K_b,
                          3.0 * sq + (nd + 4.0) * (1.0 + 2.0 * out.K_z));

  if (use_double) {
    // Tip formula entirely in double-double: squares by two_prod, pole
    // differences by two_diff, D_1 terms then D_2 terms.
    std::vector<DoubleDouble> num1, den1, num2, den2;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      const DoubleDouble sq_z = dd::two_prod(a.z(k), a.z(k));
      const DoubleDouble diff = dd::two_diff(a.d(k), shift);
      if (k < i) {
        num1.push_back(sq_z);
        den1.push_back(diff);
      } else {
        num2.push_back(sq_z);
        den2.push_back(diff);
      }
    }
    const DoubleDouble p = dd::sum_of_quotients(num1, den1) +
                           dd::div(DoubleDouble(1.0), DoubleDouble(a.rho()));
    const DoubleDouble q = dd::sum_of_quotients(num2, den2);
    const DoubleDouble total = p + q;
    const DoubleDouble bd = dd::div(total, dd::two_prod(zi, zi));
    m.b_dd = bd;
    m.b = bd.hi;
    out.K_b = (p - q).hi / std::abs(total.hi);
    out.tip_scale = dd::div(p - q, dd::two_prod(zi, zi)).hi;
  }
  return out;
}

namespace {

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  if (std::isfinite(s) && s > 0x1p-960) return std::sqrt(s);
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  s = 0.0;
  for (double v : x) {
    const double t = v / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

std::vector<double> normalized(const std::vector<double>& x) {
  const double nrm = norm2(x);
  std::vector<double> v(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) v[j] = x[j] / nrm;
  return v;
}

}  // namespace

ShiftedVector vector_from_mu(const DPR1Matrix& a, std::size_t i, double mu) {
  if (mu == 0.0) throw Error(ErrorCode::invalid_argument, "vector_from_mu: mu is zero");
  const std::size_t n = a.size();
  ShiftedVector out;
  out.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) {
      out.x[j] = -a.z(i) / mu;
    } else {
      const double den = (a.d(j) - a.d(i)) - mu;
      if (den == 0.0) {
        throw Error(ErrorCode::invalid_argument, "vector_from_mu: d_i + mu hits a pole");
      }
      out.x[j] = a.z(j) / den;
    }
  }
  out.v = normalized(out.x);
  return out;
}

std::optional<DPR1Form> nonstandard_shift(const DPR1Matrix& a, const DoubleDouble& sigma,
                                          bool use_double) {
  const std::size_t n = a.size();
  const bool wide = use_double || sigma.lo != 0.0;
  DPR1Form out;
  out.d.resize(n);
  out.u.resize(n);
  double s = 0.0;
  DoubleDouble sd;
  for (std::size_t j = 0; j < n; ++j) {
    DoubleDouble diff = wide ? DoubleDouble(a.d(j)) - sigma : DoubleDouble(a.d(j) - sigma.hi);
    if (diff.hi == 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "nonstandard_shift: shift coincides with pole " + std::to_string(j));
    }
    out.d[j] = 1.0 / diff.hi;
    out.u[j] = a.z(j) * out.d[j];
    if (use_double) {
      sd = sd + dd::div_unchecked(dd::two_prod(a.z(j), a.z(j)), diff);
    } else {
      s += a.z(j) * a.z(j) / diff.hi;
    }
  }
  if (use_double) {
    const DoubleDouble den = DoubleDouble(1.0) + DoubleDouble(a.rho()) * sd;
    if (den.hi == 0.0) return std::nullopt;
    out.gamma = -dd::div_unchecked(DoubleDouble(a.rho()), den).hi;
  } else {
    const double den = 1.0 + a.rho() * s;
    if (den == 0.0) return std::nullopt;
    out.gamma = -a.rho() / den;
  }
  return out;
}

std::optional<DPR1Form> invert_dpr1(const DPR1Matrix& a, bool use_double) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a.d(j) == 0.0) {
      throw Error(ErrorCode::internal, "invert_dpr1: zero pole, A^{-1} is not DPR1");
    }
  }
  return nonstandard_shift(a, DoubleDouble(0.0), use_double);
}

namespace {

struct PoleAttempt {
  std::size_t pole = 0;
  Side side = Side::rightmost;
  ShiftedInverse inv;
  bool used_double = false;
  double nu = 0.0;
  double K_nu = 1.0;
  // Forward error bound for mu in units of eps: the componentwise condition
  // of nu times |mu|.
  double mu_error = 0.0;
  std::size_t iters = 0;
};

// |y|^T |M| |y| / (|nu| y^T y) for the eigenvector y of the arrowhead M
// belonging to nu, taking y = 1 at the arrow.
double componentwise_condition(const ArrowheadMatrix& m, double nu) {
  double yy = 1.0;
  double quad = std::abs(m.b);
  for (std::size_t j = 0; j < m.delta.size(); ++j) {
    const double y = m.w[j] / (nu - m.delta[j]);
    yy += y * y;
    quad += std::abs(m.delta[j]) * y * y + 2.0 * std::abs(m.w[j] * y);
  }
  const double c = quad / (std::abs(nu) * yy);
  return std::isfinite(c) ? c : std::numeric_limits<double>::infinity();
}

PoleAttempt attempt_at_pole(const DPR1Matrix& a, std::size_t i, Side side,
                            const SolverConfig& cfg) {
  const std::size_t n = a.size();
  PoleAttempt at;
  at.pole = i;
  at.side = side;
  at.inv = invert_shifted(a, i, false);
  if (cfg.use_double && at.inv.kappa_nu > cfg.kappa_threshold_factor * static_cast<double>(n)) {
    ShiftedInverse wide = invert_shifted(a, i, true);
    at.inv.arrow = std::move(wide.arrow);
    at.inv.K_b = wide.K_b;
    at.inv.tip_scale = wide.tip_scale;
    at.used_double = true;
  }
  const BisectionResult r = bisect_extreme(at.inv.arrow, side, cfg.max_bisect_iters);
  at.nu = r.value;
  at.iters = r.iters;
  double norm = std::abs(at.nu);
  if (n > 1) {
    const BisectionResult o = bisect_extreme(at.inv.arrow, opposite(side), cfg.max_bisect_iters);
    at.iters += o.iters;
    norm = std::max(norm, std::abs(o.value));
    at.K_nu = norm / std::abs(at.nu);
  }
  if (!(at.nu != 0.0) || !std::isfinite(at.nu)) {
    throw Error(ErrorCode::solver, "bisection returned a zero or non-finite eigenvalue");
  }
  // The double-double tip is off by about eps^2 * tip_scale, which must stay
  // below eps ||A_i^{-1}||; K_nu accounts for the rest. With ||A_i^{-1}|| ~ |b|
  // this is K_b < 1/eps.
  if (at.used_double && !(at.inv.tip_scale * kEpsM < norm)) {
    throw Error(ErrorCode::extended_precision,
                "K_b = " + std::to_string(at.inv.K_b) + " with ||A_i^{-1}|| / |b| = " +
                    std::to_string(norm / std::abs(at.inv.arrow.b)) +
                    "; the arrow tip needs more than double the working precision");
  }
  at.mu_error = componentwise_condition(at.inv.arrow, at.nu) / std::abs(at.nu);
  return at;
}

void adopt(const DPR1Matrix& a, const PoleAttempt& at, EigenSolution& sol) {
  const double mu = 1.0 / at.nu;
  const double sigma = a.d(at.pole);
  sol.pair.sigma = sigma;
  sol.pair.mu = mu;
  sol.pair.lambda = mu + sigma;
  sol.pair.v = vector_from_mu(a, at.pole, mu).v;

  sol.diag.kappa_nu = at.inv.kappa_nu;
  sol.diag.K_b = at.inv.K_b;
  sol.diag.K_z = at.inv.K_z;
  sol.diag.K_nu = at.K_nu;
  sol.diag.used_double_b = at.used_double;
  sol.diag.nu = at.nu;
  sol.diag.shift_index = at.pole;
}

// Remedy R2: invert A - sigma I for a shift sigma close to the current
// estimate, between it and the nearer neighboring pole. Returns false when
// no usable shift exists.
bool shift_off_pole(const DPR1Matrix& a, std::size_t k, const SolverConfig& cfg,
                    EigenSolution& sol) {
  const std::size_t n = a.size();
  constexpr int kMaxRounds = 3;
  const double lower = a.d(k);
  double upper = 0.0;
  if (k > 0) {
    upper = a.d(k - 1);
  } else {
    double s = 0.0;
    for (double zj : a.z()) s += zj * zj;
    upper = a.d(0) + a.rho() * s;
    upper += 4.0 * static_cast<double>(n + 1) * kEpsM * (std::abs(a.d(0)) + a.rho() * s);
  }
  auto inside = [&](double x) { return x > lower && (k == 0 ? x <= upper : x < upper); };

  bool improved = false;
  for (int round = 0; round < kMaxRounds; ++round) {
    double est = sol.pair.lambda;
    const bool clamped = !inside(est);
    if (clamped) est = lower + (upper - lower) / 2.0;
    double near = a.d(k);
    if (k > 0 && std::abs(est - a.d(k - 1)) < std::abs(est - a.d(k))) near = a.d(k - 1);
    if (est == near) return improved;

    DoubleDouble sigma(est + (near - est) / 8.0);
    const bool strictly_between =
        near < est ? (sigma.hi > near && sigma.hi < est) : (sigma.hi < near && sigma.hi > est);
    if (!strictly_between) {
      if (!cfg.use_double) return improved;
      const DoubleDouble gap = dd::two_diff(near, est);
      sigma = DoubleDouble(est) + DoubleDouble(gap.hi * 0.125, gap.lo * 0.125);
    }

    const std::optional<DPR1Form> inv = nonstandard_shift(a, sigma, cfg.use_double);
    if (!inv) {
      // A - sigma I is numerically singular: sigma itself is the eigenvalue.
      sol.pair.sigma = sigma.hi;
      sol.pair.mu = sigma.lo;
      sol.pair.lambda = sigma.hi + sigma.lo;
      sol.diag.used_remedy = Remedy::r2;
      sol.diag.shift_index = kNoPole;
      return true;
    }
    // gamma = -rho / f(sigma): gamma > 0 puts lambda_k above sigma, where it
    // is the nearest eigenvalue and so the rightmost of the inverse.
    const Side side = inv->gamma > 0.0 ? Side::rightmost : Side::leftmost;
    const BisectionResult r = bisect_extreme(*inv, side, cfg.max_bisect_iters);
    sol.diag.bisection_iters += r.iters;
    double K_nu = 1.0;
    if (n > 1) {
      const BisectionResult o = bisect_extreme(*inv, opposite(side), cfg.max_bisect_iters);
      sol.diag.bisection_iters += o.iters;
      K_nu = std::max(std::abs(r.value), std::abs(o.value)) / std::abs(r.value);
    }
    if (!(r.value != 0.0) || !std::isfinite(r.value)) return improved;

    const double mu_shift = 1.0 / r.value;
    const double mu = sigma.lo == 0.0 ? mu_shift : sigma.lo + mu_shift;
    if (!inside(sigma.hi + mu)) return improved;
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double diff = (DoubleDouble(a.d(j)) - sigma).hi;
      const double den = diff - mu_shift;
      if (den == 0.0) return improved;
      x[j] = a.z(j) / den;
    }
    sol.pair.v = normalized(x);
    sol.pair.sigma = sigma.hi;
    sol.pair.mu = mu;
    sol.pair.lambda = sol.pair.sigma + sol.pair.mu;
    sol.diag.nu = r.value;
    sol.diag.K_nu = K_nu;
    sol.diag.used_remedy = Remedy::r2;
    sol.diag.shift_index = kNoPole;
    improved = true;
    if (K_nu <= cfg.K_nu_threshold && !clamped) break;
  }
  return improved;
}

void rescue_near_zero(const DPR1Matrix& a, std::size_t k, const SolverConfig& cfg,
                      EigenSolution& sol) {
  const double lambda = sol.pair.lambda;
  double dist = std::abs(lambda - a.d(k));
  if (k > 0) dist = std::min(dist, std::abs(lambda - a.d(k - 1)));
  if (!(std::abs(lambda) < cfg.zero_proximity_factor * dist)) return;
  for (double dj : a.d()) {
    if (dj == 0.0) return;
  }
  const std::optional<DPR1Form> inv = invert_dpr1(a, cfg.use_double);
  double rescued = 0.0;
  if (inv) {
    const Side side = lambda > 0.0 ? Side::rightmost : Side::leftmost;
    const BisectionResult r = bisect_extreme(*inv, side, cfg.max_bisect_iters);
    sol.diag.bisection_iters += r.iters;
    if (!std::isfinite(r.value) || r.value == 0.0) return;
    rescued = 1.0 / r.value;
  }
  sol.pair.lambda = rescued;
  sol.pair.sigma = 0.0;
  sol.pair.mu = rescued;
  sol.diag.used_remedy = Remedy::recompute_via_inverse;
}

}  // namespace

EigenSolution eigpair(const DPR1Matrix& a, std::size_t k, const SolverConfig& cfg) {
  cfg.check();
  const std::size_t n = a.size();
  if (k >= n) throw Error(ErrorCode::invalid_argument, "eigpair: k out of range");

  const std::size_t i = shift_select(a, k);
  const Side side = i == k ? Side::rightmost : Side::leftmost;

  EigenSolution sol;
  PoleAttempt best = attempt_at_pole(a, i, side, cfg);
  std::size_t iters = best.iters;
  Remedy remedy = Remedy::none;

  if (best.K_nu > cfg.K_nu_threshold && k > 0) {
    const std::size_t j = i == k ? k - 1 : k;
    PoleAttempt other = attempt_at_pole(a, j, opposite(side), cfg);
    iters += other.iters;
    // The far pole can lose more to cancellation in sigma + mu than the
    // near one loses to a large K_nu.
    if (other.K_nu < best.K_nu && other.mu_error < best.mu_error) {
      best = std::move(other);
      remedy = Remedy::r1;
    }
  }
  adopt(a, best, sol);
  sol.diag.bisection_iters = iters;
  sol.diag.used_remedy = remedy;

  // From the far pole, lambda = sigma + mu also loses |mu| / |lambda|.
  double amplification = sol.diag.K_nu;
  if (remedy == Remedy::r1) {
    amplification *= std::max(1.0, std::abs(sol.pair.mu) / std::abs(sol.pair.lambda));
  }
  if (amplification > cfg.K_nu_threshold) shift_off_pole(a, k, cfg, sol);
  rescue_near_zero(a, k, cfg, sol);
  return sol;
}

Spectrum eig_all(const DPR1Matrix& a, const SolverConfig& cfg, unsigned threads) {
  cfg.check();
  const std::size_t n = a.size();
  Spectrum out;
  out.pairs.resize(n);
  out.diags.resize(n);
  std::vector<std::exception_ptr> errors(n);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < n; k += stride) {
      try {
        EigenSolution s = eigpair(a, k, cfg);
        out.pairs[k] = std::move(s.pair);
        out.diags[k] = s.diag;
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
    for (auto& th : pool) th.join();
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (!errors[k]) continue;
    const std::string where = "eigenpair " + std::to_string(k + 1) + ": ";
    try {
      std::rethrow_exception(errors[k]);
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    } catch (const std::exception& e) {
      throw Error(ErrorCode::internal, where + e.what());
    }
  }
  return out;
}

}  // namespace dpr1
