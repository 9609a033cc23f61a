#include "dpr1/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dpr1 {

namespace {

[[noreturn]] void bad_input(const std::string& msg) {
  throw Error(ErrorCode::invalid_argument, msg);
}

// x <- G_1^T ... G_m^T x
void unrotate(const std::vector<GivensRotation>& rotations, std::vector<double>& x) {
  for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) {
    const double xk = x[it->keep];
    const double xz = x[it->zeroed];
    x[it->keep] = it->c * xk - it->s * xz;
    x[it->zeroed] = it->s * xk + it->c * xz;
  }
}

}  // namespace

RawInput validate(std::vector<double> d, std::vector<double> z, double rho) {
  if (d.size() != z.size()) {
    bad_input("length mismatch: d has " + std::to_string(d.size()) +
              " entries, z has " + std::to_string(z.size()));
  }
  if (d.empty()) bad_input("empty problem (n = 0)");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i]) || !std::isfinite(z[i])) {
      bad_input("non-finite entry at index " + std::to_string(i));
    }
  }
  if (!std::isfinite(rho)) bad_input("non-finite rho");
  if (rho == 0.0) bad_input("rho must be nonzero");
  return RawInput{std::move(d), std::move(z), rho};
}

DPR1Matrix::DPR1Matrix(std::vector<double> d, std::vector<double> z, double rho)
    : d_(std::move(d)), z_(std::move(z)), rho_(rho) {
  if (d_.empty() || d_.size() != z_.size()) {
    bad_input("DPR1Matrix: d and z must have the same nonzero length");
  }
  if (!(rho_ > 0.0) || !std::isfinite(rho_)) bad_input("DPR1Matrix: rho must be positive");
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (!std::isfinite(d_[i]) || !std::isfinite(z_[i])) {
      bad_input("DPR1Matrix: non-finite entry at index " + std::to_string(i));
    }
    if (z_[i] == 0.0) {
      bad_input("DPR1Matrix: zeta_" + std::to_string(i) + " is zero (reducible)");
    }
    if (i > 0 && !(d_[i - 1] > d_[i])) {
      bad_input("DPR1Matrix: poles not strictly decreasing at index " + std::to_string(i));
    }
  }
}

std::vector<double> ReductionResult::to_original(std::span<const double> core_vector) const {
  std::vector<double> x(input_size, 0.0);
  for (std::size_t c = 0; c < core_vector.size(); ++c) x[permutation[c]] = core_vector[c];
  unrotate(rotations, x);
  return x;
}

ReductionResult reduce(const RawInput& input, const ReduceOptions& opts) {
  const std::size_t n = input.size();
  if (n == 0 || input.z.size() != n) {
    throw Error(ErrorCode::invalid_argument, "reduce: malformed input");
  }

  ReductionResult out;
  out.input_size = n;
  out.negated = input.rho < 0.0;
  const double sign = out.negated ? -1.0 : 1.0;
  const double rho = sign * input.rho;
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = sign * input.d[i];
  std::vector<double> z = input.z;

  double zmax = 0.0;
  for (double v : z) zmax = std::max(zmax, std::abs(v));
  const double zero_cut = opts.deflation_tol * zmax;

  std::vector<std::size_t> deflated_idx;
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(z[i]) <= zero_cut) {
      deflated_idx.push_back(i);
    } else {
      live.push_back(i);
    }
  }

  std::stable_sort(live.begin(), live.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

  std::vector<std::size_t> kept;
  for (std::size_t pos = 0; pos < live.size();) {
    const std::size_t keep = live[pos];
    kept.push_back(keep);
    std::size_t next = pos + 1;
    while (next < live.size() &&
           std::abs(d[keep] - d[live[next]]) <= std::abs(d[keep]) * opts.tie_tol) {
      const std::size_t j = live[next];
      const double r = std::hypot(z[keep], z[j]);
      GivensRotation g{keep, j, z[keep] / r, z[j] / r};
      z[keep] = r;
      z[j] = 0.0;
      out.rotations.push_back(g);
      deflated_idx.push_back(j);
      ++next;
    }
    pos = next;
  }

  if (kept.empty() && deflated_idx.empty()) {
    throw Error(ErrorCode::internal, "reduce: empty core with no deflations");
  }

  if (!kept.empty()) {
    std::vector<double> cd(kept.size()), cz(kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c) {
      cd[c] = d[kept[c]];
      cz[c] = z[kept[c]];
    }
    out.core.emplace(std::move(cd), std::move(cz), rho);
    out.permutation = kept;
  }

  // Deflated eigenvectors are unit vectors in the rotated basis; carry them
  // back through every rotation.
  for (std::size_t j : deflated_idx) {
    std::vector<double> x(n, 0.0);
    x[j] = 1.0;
    unrotate(out.rotations, x);
    out.deflated.push_back(DeflatedPair{sign * d[j], j, std::move(x)});
  }
  return out;
}

DenseMatrix materialize(std::span<const double> d, std::span<const double> z,
                        double rho) {
  DenseMatrix m;
  m.n = d.size();
  m.a.assign(m.n * m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      const double r = rho * z[i] * z[j];
      m(i, j) = i == j ? d[i] + r : r;
    }
  }
  return m;
}

DenseMatrix materialize(const DPR1Matrix& a) { return materialize(a.d(), a.z(), a.rho()); }

DenseMatrix materialize(const RawInput& a) { return materialize(a.d, a.z, a.rho); }

std::string_view to_string(Remedy r) noexcept {
  switch (r) {
    case Remedy::none: return "none";
    case Remedy::r1: return "R1";
    case Remedy::r2: return "R2";
    case Remedy::recompute_via_inverse: return "recompute_via_inverse";
  }
  return "unknown";
}

}  // namespace dpr1
