#include "dpr1/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace dpr1 {

RawInput example1() {
  return validate({1e10, 5.0, 4e-3, 0.0, -4e-3, -5.0}, {1e10, 1.0, 1.0, 1e-7, 1.0, 1.0}, 1.0);
}

RawInput example2() {
  const double e = kEpsM;
  return validate({1.0 + 40 * e, 1.0 + 30 * e, 1.0 + 20 * e, 1.0 + 10 * e}, {1.0, 2.0, 2.0, 1.0},
                  1.0);
}

RawInput example3() {
  const double beta = 1e-7;
  return validate({10.0 / 3.0, 2.0 + beta, 2.0 - beta, 1.0}, {2.0, beta, beta, 2.0}, 1.0);
}

RawInput example4(double beta, std::size_t n) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::invalid_argument, "example4: beta must be positive and finite");
  }
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorCode::invalid_argument,
                "example4: n must be even and at least 4, got " + std::to_string(n));
  }
  const std::size_t m = (n - 2) / 2;
  std::vector<double> d, z;
  d.reserve(n);
  z.reserve(n);
  d.push_back(10.0 / 3.0);
  z.push_back(2.0);
  for (std::size_t k = m; k >= 1; --k) {
    d.push_back(2.0 + static_cast<double>(k) * beta);
    z.push_back(beta);
  }
  for (std::size_t k = 1; k <= m; ++k) {
    d.push_back(2.0 - static_cast<double>(k) * beta);
    z.push_back(beta);
  }
  d.push_back(1.0);
  z.push_back(2.0);
  for (std::size_t i = 1; i < n; ++i) {
    if (!(d[i - 1] > d[i])) {
      throw Error(ErrorCode::invalid_argument,
                  "example4: poles collide for beta = " + std::to_string(beta));
    }
  }
  return validate(std::move(d), std::move(z), 1.0);
}

namespace {

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

}  // namespace

RawInput random_matrix(const RandomParams& p) {
  if (p.n == 0) throw Error(ErrorCode::invalid_argument, "random: n must be positive");
  if (!(p.spread > 0.0) || !std::isfinite(p.spread)) {
    throw Error(ErrorCode::invalid_argument, "random: spread must be positive");
  }
  const double step = p.spread / static_cast<double>(p.n);
  if (std::pow(10.0, step / 2.0) - 1.0 < 1e-3) {
    throw Error(ErrorCode::invalid_argument,
                "random: spread too small for n; relative pole gap would fall below 1e-3");
  }
  std::mt19937_64 rng(p.seed);
  std::vector<double> d(p.n), z(p.n);
  for (std::size_t j = 0; j < p.n; ++j) {
    const double jitter = 0.25 + 0.5 * unit(rng);
    const double e = -p.spread / 2.0 + step * (static_cast<double>(j) + jitter);
    d[j] = std::pow(10.0, e);
  }
  // Random signs keep same-sign neighbours at least a slot apart.
  for (double& x : d) {
    if (rng() & 1U) x = -x;
  }
  std::sort(d.begin(), d.end(), std::greater<>());
  for (double& x : z) {
    x = std::pow(10.0, -8.0 + 16.0 * unit(rng));
    if (rng() & 1U) x = -x;
  }
  return validate(std::move(d), std::move(z), 1.0);
}

}  // namespace dpr1
