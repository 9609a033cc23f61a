#include "dpr1/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpr1/ddarith.hpp"

namespace dpr1 {

namespace {

void add_deflated(const DeflatedPair& p, std::size_t position, Solution& out) {
  out.index.push_back(position);
  out.lambda.push_back(p.lambda);
  out.sigma.push_back(p.lambda);
  out.mu.push_back(0.0);
  out.vectors.push_back(p.v);
  SolveDiagnostics diag;
  diag.deflated = true;
  diag.shift_index = kNoPole;
  out.diags.push_back(diag);
}

void add_core(const ReductionResult& red, const EigenPair& pair, const SolveDiagnostics& diag,
              std::size_t position, Solution& out) {
  const double s = red.negated ? -1.0 : 1.0;
  out.index.push_back(position);
  out.lambda.push_back(s * pair.lambda);
  out.sigma.push_back(s * pair.sigma);
  out.mu.push_back(s * pair.mu);
  out.vectors.push_back(red.to_original(pair.v));
  out.diags.push_back(diag);
}

DoubleDouble sqrt_dd(const DoubleDouble& x) {
  if (x.hi <= 0.0) return DoubleDouble(0.0);
  const double y = std::sqrt(x.hi);
  const DoubleDouble r = x - dd::two_prod(y, y);
  return dd::quick_two_sum(y, r.hi / (2.0 * y));
}

// ||x||_2 / divisor with x, the norm and the quotient carried in
// double-double and rounded once at the end.
double scaled_norm(const std::vector<DoubleDouble>& x, const DoubleDouble& divisor) {
  double big = 0.0;
  for (const auto& v : x) big = std::max(big, std::abs(v.hi));
  if (big == 0.0) return 0.0;
  if (!std::isfinite(big)) return big;
  const int e = std::ilogb(big);
  DoubleDouble s;
  for (const auto& v : x) {
    const DoubleDouble t(std::ldexp(v.hi, -e), std::ldexp(v.lo, -e));
    s = s + t * t;
  }
  const DoubleDouble q = dd::div(sqrt_dd(s), divisor);
  return std::ldexp(q.to_double(), e);
}

}  // namespace

Solution solve(const RawInput& input, const SolveOptions& opts) {
  opts.solver.check();
  const ReductionResult red = reduce(input, opts.reduce);
  Solution out;
  out.n = input.size();
  std::size_t position = 1;
  if (red.core) {
    const Spectrum spec = eig_all(*red.core, opts.solver, opts.threads);
    for (std::size_t k = 0; k < spec.pairs.size(); ++k) {
      add_core(red, spec.pairs[k], spec.diags[k], position++, out);
    }
  }
  for (const auto& p : red.deflated) add_deflated(p, position++, out);
  return out;
}

Solution solve_one(const RawInput& input, std::size_t k, const SolveOptions& opts) {
  opts.solver.check();
  if (k == 0 || k > input.size()) {
    throw Error(ErrorCode::invalid_argument,
                "eigenpair index " + std::to_string(k) + " out of range 1.." +
                    std::to_string(input.size()));
  }
  const ReductionResult red = reduce(input, opts.reduce);
  Solution out;
  out.n = input.size();
  if (k <= red.core_size()) {
    EigenSolution sol;
    try {
      sol = eigpair(*red.core, k - 1, opts.solver);
    } catch (const Error& e) {
      throw Error(e.code(), "eigenpair " + std::to_string(k) + ": " + e.what());
    }
    add_core(red, sol.pair, sol.diag, k, out);
  } else {
    add_deflated(red.deflated[k - 1 - red.core_size()], k, out);
  }
  return out;
}

Measures compute_measures(const RawInput& a, const std::vector<double>& lambda,
                          const std::vector<std::vector<double>>& vectors) {
  const std::size_t n = a.size();
  const std::size_t m = lambda.size();
  if (vectors.size() != m) {
    throw Error(ErrorCode::invalid_argument, "compute_measures: lambda and V differ in size");
  }
  for (const auto& v : vectors) {
    if (v.size() != n) {
      throw Error(ErrorCode::invalid_argument, "compute_measures: vector length differs from n");
    }
  }
  Measures out;
  if (m == 0) return out;

  double norm_a = 0.0;
  for (double l : lambda) norm_a = std::max(norm_a, std::abs(l));
  const double scale = static_cast<double>(n) * kEpsM;
  const DoubleDouble r_divisor = dd::two_prod(scale, norm_a);

  std::vector<DoubleDouble> r(n);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& v = vectors[j];
    DoubleDouble ztv;
    for (std::size_t i = 0; i < n; ++i) ztv = ztv + dd::two_prod(a.z[i], v[i]);
    const DoubleDouble t = ztv * DoubleDouble(a.rho);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = dd::two_prod(a.d[i], v[i]) - dd::two_prod(lambda[j], v[i]) + t * DoubleDouble(a.z[i]);
    }
    if (norm_a > 0.0) out.R = std::max(out.R, scaled_norm(r, r_divisor));
  }

  std::vector<DoubleDouble> g(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t l = 0; l < m; ++l) {
      DoubleDouble s;
      for (std::size_t i = 0; i < n; ++i) s = s + dd::two_prod(vectors[l][i], vectors[j][i]);
      if (l == j) s = s - DoubleDouble(1.0);
      g[l] = s;
    }
    out.O = std::max(out.O, scaled_norm(g, DoubleDouble(scale)));
  }
  return out;
}

Measures compute_measures(const DPR1Matrix& a, const std::vector<double>& lambda,
                          const std::vector<std::vector<double>>& vectors) {
  RawInput raw;
  raw.d.assign(a.d().begin(), a.d().end());
  raw.z.assign(a.z().begin(), a.z().end());
  raw.rho = a.rho();
  return compute_measures(raw, lambda, vectors);
}

}  // namespace dpr1
