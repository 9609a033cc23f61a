#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <string>

#include "dpr1/generators.hpp"
#include "dpr1/oracle.hpp"
#include "dpr1/solver.hpp"

using namespace dpr1;

namespace {

const DPR1Matrix two_by_two({2, 1}, {1, 1}, 1.0);

std::string digits16(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15e", x);
  return buf;
}

Eigen::MatrixXd dense(const DPR1Form& b) {
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = b.gamma * b.u[i] * b.u[j] + (i == j ? b.d[i] : 0.0);
  return m;
}

Eigen::MatrixXd dense(const ArrowheadMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  const auto arrow = static_cast<Eigen::Index>(m.arrow_index);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == arrow) continue;
    out(i, i) = m.delta[r];
    out(i, arrow) = out(arrow, i) = m.w[r];
    ++r;
  }
  out(arrow, arrow) = m.b;
  return out;
}

Eigen::MatrixXd dense(const DPR1Matrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a.rho() * a.z(i) * a.z(j) + (i == j ? a.d(i) : 0.0);
  return m;
}

double max_rel_component_error(const std::vector<double>& v, const std::vector<BigFloat>& ref) {
  std::size_t big = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(ref[i].to_double()) > std::abs(ref[big].to_double())) big = i;
  const double sign = (v[big] > 0) == (ref[big].sign() > 0) ? 1.0 : -1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, relative_error(sign * v[i], ref[i]));
  return worst;
}

DPR1Matrix random_core(std::size_t n, std::uint64_t seed) {
  RandomParams p;
  p.n = n;
  p.seed = seed;
  return *reduce(random_matrix(p)).core;
}

}  // namespace

TEST(ShiftSelect, Examples) {
  const auto ex1 = *reduce(example1()).core;
  EXPECT_EQ(shift_select(ex1, 0), 0u);
  EXPECT_EQ(ex1.d(shift_select(ex1, 0)), 1e10);
  EXPECT_EQ(shift_select(two_by_two, 1), 1u);
  EXPECT_THROW(shift_select(two_by_two, 2), Error);
}

TEST(ShiftSelect, SecondExamplePicksTheNearestPole) {
  const auto a = *reduce(example2()).core;
  const auto lambda = oracle_eigvals(a);
  for (std::size_t k = 1; k < a.size(); ++k) {
    const BigFloat lo = abs(lambda[k] - BigFloat(a.d(k), 64));
    const BigFloat hi = abs(lambda[k] - BigFloat(a.d(k - 1), 64));
    EXPECT_EQ(shift_select(a, k), lo < hi ? k : k - 1) << "k=" << k;
  }
}

TEST(InvertShifted, ThirdExampleTip) {
  const auto a = *reduce(example3()).core;
  const std::size_t i = shift_select(a, 1);
  EXPECT_EQ(digits16(invert_shifted(a, i, false).arrow.b), "5.749999751891721e+07");
  EXPECT_EQ(digits16(invert_shifted(a, i, true).arrow.b), "5.749999754927588e+07");
  for (std::size_t k = 1; k < 4; ++k) {
    const double kappa = invert_shifted(a, shift_select(a, k), false).kappa_nu;
    EXPECT_GE(kappa, 1e6) << "k=" << k;
    EXPECT_LE(kappa, 1e9) << "k=" << k;
  }
}

TEST(InvertShifted, SmallExampleMatchesDenseInverse) {
  const auto inv = invert_shifted(two_by_two, 1, false);
  EXPECT_EQ(inv.arrow.delta, std::vector<double>{1.0});
  EXPECT_EQ(inv.arrow.w, std::vector<double>{-1.0});
  EXPECT_EQ(inv.arrow.b, 2.0);
  Eigen::Matrix2d shifted;
  shifted << 2, 1, 1, 1;
  EXPECT_LE((dense(inv.arrow) - shifted.inverse()).norm(), 4 * kEpsM);
}

TEST(InvertShifted, RandomArrowheadIsTheInverse) {
  const DPR1Matrix a({5, 3, 2, -1, -4, -6}, {1, 0.5, 2, 1, 0.3, -1.5}, 0.7);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto inv = invert_shifted(a, i, true);
    Eigen::MatrixXd shifted = dense(a);
    shifted.diagonal().array() -= a.d(i);
    const Eigen::MatrixXd prod = dense(inv.arrow) * shifted;
    EXPECT_LE((prod - Eigen::MatrixXd::Identity(6, 6)).norm(), 1e-13) << "i=" << i;
  }
}

TEST(VectorFromMu, OneByOne) {
  const DPR1Matrix a({5}, {2}, 1.0);
  const auto v = vector_from_mu(a, 0, 4.0);
  EXPECT_EQ(v.x, std::vector<double>{-0.5});
  EXPECT_EQ(v.v, std::vector<double>{-1.0});
  EXPECT_THROW(vector_from_mu(a, 0, 0.0), Error);
}

TEST(VectorFromMu, RandomAgreesWithOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = random_core(6, seed);
    const auto lambda = oracle_eigvals(a);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const std::size_t i = shift_select(a, k);
      const double mu = (lambda[k] - BigFloat(a.d(i), 64)).to_double();
      const auto v = vector_from_mu(a, i, mu).v;
      EXPECT_LE(max_rel_component_error(v, oracle_eigvec(a, lambda[k])), 50 * 6 * kEpsM)
          << "seed=" << seed << " k=" << k;
    }
  }
}

TEST(InvertDpr1, SmallCases) {
  const auto inv = invert_dpr1(two_by_two, false);
  ASSERT_TRUE(inv);
  EXPECT_EQ(inv->d, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(inv->u, (std::vector<double>{0.5, 1.0}));
  EXPECT_NEAR(inv->gamma, -0.4, kEpsM);
  Eigen::Matrix2d expect;
  expect << 0.4, -0.2, -0.2, 0.6;
  EXPECT_LE((dense(*inv) - expect).cwiseAbs().maxCoeff(), 4 * kEpsM);

  const auto one = invert_dpr1(DPR1Matrix({1}, {1}, 1.0), true);
  ASSERT_TRUE(one);
  EXPECT_EQ(one->gamma, -0.5);
  EXPECT_EQ(dense(*one)(0, 0), 0.5);
}

TEST(InvertDpr1, SingularMatrix) {
  // d = -1, z = 1, rho = 1 is the zero matrix.
  EXPECT_FALSE(invert_dpr1(DPR1Matrix({-1}, {1}, 1.0), false));
  EXPECT_FALSE(invert_dpr1(DPR1Matrix({-1}, {1}, 1.0), true));
  EXPECT_THROW(invert_dpr1(DPR1Matrix({1, 0}, {1, 1}, 1.0), false), Error);
}

TEST(NonstandardShift, ZeroShiftIsTheInverse) {
  const auto a = random_core(5, 9);
  for (bool wide : {false, true}) {
    const auto s = nonstandard_shift(a, DoubleDouble(0.0), wide);
    const auto i = invert_dpr1(a, wide);
    ASSERT_TRUE(s && i);
    EXPECT_EQ(s->d, i->d);
    EXPECT_EQ(s->u, i->u);
    EXPECT_EQ(s->gamma, i->gamma);
  }
}

TEST(NonstandardShift, SmallExampleMatchesDenseInverse) {
  const auto inv = nonstandard_shift(two_by_two, DoubleDouble(1.5), false);
  ASSERT_TRUE(inv);
  Eigen::Matrix2d expect;
  expect << -2, 4, 4, -6;
  const Eigen::MatrixXd got = dense(*inv);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_LE(std::abs(got(i, j) - expect(i, j)), 8 * kEpsM * std::abs(expect(i, j)));
  EXPECT_THROW(nonstandard_shift(two_by_two, DoubleDouble(2.0), false), Error);
}

TEST(NonstandardShift, InteriorShiftRecoversTheNearestEigenvalue) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = random_core(5, seed);
    const double n = 5.0;
    const auto lambda = oracle_eigvals(a);
    const double sigma = a.d(2) + (a.d(1) - a.d(2)) / 2.0;
    std::size_t nearest = 0;
    for (std::size_t k = 1; k < a.size(); ++k) {
      if (abs(lambda[k] - BigFloat(sigma, 64)) < abs(lambda[nearest] - BigFloat(sigma, 64))) nearest = k;
    }
    const auto inv = nonstandard_shift(a, DoubleDouble(sigma), true);
    ASSERT_TRUE(inv);
    const Side side = lambda[nearest] > BigFloat(sigma, 64) ? Side::rightmost : Side::leftmost;
    const double x = bisect_extreme(*inv, side).value;
    const BigFloat got = BigFloat(sigma, 256) + BigFloat(1.0, 256) / BigFloat(x, 256);
    const double kappa_bis = 1.06 * n * (std::sqrt(n) + 1.0);
    EXPECT_LE(relative_error(got, lambda[nearest]), 10 * n * kEpsM * kappa_bis)
        << "seed=" << seed;
  }
}

TEST(Eigpair, FirstExample) {
  const auto a = *reduce(example1()).core;
  EXPECT_EQ(eigpair(a, 1).pair.lambda, 5.000000000100000);
  EXPECT_EQ(digits16(eigpair(a, 3).pair.lambda), "9.999999998999997e-25");
  const auto v4 = eigpair(a, 3).pair.v;
  EXPECT_EQ(digits16(v4[3]), "-1.000000000000000e+00");
  EXPECT_EQ(digits16(v4[2]), "2.499999999749999e-15");
}

TEST(Eigpair, SecondExampleInteriorEigenvalues) {
  const auto a = *reduce(example2()).core;
  const double eps = 0x1p-52;
  const double expect[] = {1 + 39 * eps, 1 + 25 * eps, 1 + 11 * eps};
  for (std::size_t k = 1; k < 4; ++k) {
    const auto s = eigpair(a, k);
    EXPECT_EQ(s.pair.lambda, expect[k - 1]) << "k=" << k;
    EXPECT_EQ(s.pair.sigma, a.d(s.diag.shift_index));
  }
}

TEST(Eigpair, SecondExampleLargestIsCorrectlyRounded) {
  const auto a = *reduce(example2()).core;
  const auto lambda = oracle_eigvals(a);
  EXPECT_EQ(eigpair(a, 0).pair.lambda, lambda[0].to_double());
}

TEST(Eigpair, OneByOne) {
  const auto s = eigpair(DPR1Matrix({5}, {2}, 1.0), 0);
  EXPECT_EQ(s.pair.lambda, 9.0);
  ASSERT_EQ(s.pair.v.size(), 1u);
  EXPECT_EQ(std::abs(s.pair.v[0]), 1.0);
}

TEST(Eigpair, RejectsBadConfig) {
  SolverConfig cfg;
  cfg.K_nu_threshold = 0.0;
  EXPECT_THROW(eigpair(two_by_two, 0, cfg), Error);
  EXPECT_THROW(eigpair(two_by_two, 2), Error);
}

TEST(EigAll, FirstExampleTable) {
  const auto s = eig_all(*reduce(example1()).core);
  const double expect[] = {1.000000000100000e20, 5.000000000100000, 4.000000100000001e-3,
                           9.999999998999997e-25, -3.999999900000001e-3, -4.999999999900000};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(digits16(s.pairs[k].lambda), digits16(expect[k]));
}

TEST(EigAll, RandomAgainstDenseSolverAndOracle) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto a = random_core(8, seed);
    const auto s = eig_all(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(a));
    const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    const auto lambda = oracle_eigvals(a);
    for (std::size_t k = 0; k < 8; ++k) {
      EXPECT_LE(std::abs(s.pairs[k].lambda - es.eigenvalues()(7 - static_cast<Eigen::Index>(k))),
                10 * 8 * kEpsM * norm);
      EXPECT_LE(relative_error(s.pairs[k].lambda, lambda[k]), 50 * 8 * kEpsM);
      EXPECT_LE(max_rel_component_error(s.pairs[k].v, oracle_eigvec(a, lambda[k])), 50 * 8 * kEpsM)
          << "seed=" << seed << " k=" << k;
    }
  }
}

TEST(EigAll, IndependentOfThreadCount) {
  const auto a = random_core(30, 5);
  const auto one = eig_all(a, {}, 1);
  const auto many = eig_all(a, {}, 4);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(one.pairs[k].lambda, many.pairs[k].lambda);
    EXPECT_EQ(one.pairs[k].v, many.pairs[k].v);
  }
}

TEST(EigAll, NoDoubleDoubleOnTheFirstExample) {
  const auto s = eig_all(*reduce(example1()).core);
  for (const auto& d : s.diags) EXPECT_FALSE(d.used_double_b);
}
