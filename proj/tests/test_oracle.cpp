#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "dpr1/generators.hpp"
#include "dpr1/oracle.hpp"

using namespace dpr1;

namespace {

BigFloat number(const std::string& s) { return BigFloat::parse(s, 256); }

DPR1Matrix random_core(std::size_t n, std::uint64_t seed) {
  RandomParams p;
  p.n = n;
  p.seed = seed;
  return *reduce(random_matrix(p)).core;
}

}  // namespace

TEST(BigFloat, ArithmeticAndFormatting) {
  const BigFloat third = BigFloat(1.0, 200) / BigFloat(3.0, 200);
  EXPECT_EQ(third.to_string(20), "3.3333333333333333333e-01");
  EXPECT_EQ((third * BigFloat(3.0, 53)).to_double(), 1.0);
  EXPECT_EQ(BigFloat::from_dd({1.0, 0x1p-80}, 200) - BigFloat(1.0, 53), BigFloat(0x1p-80, 53));
  EXPECT_EQ(sqrt(BigFloat(4.0, 100)).to_double(), 2.0);
  EXPECT_EQ(abs(BigFloat(-2.5, 53)).to_double(), 2.5);
  EXPECT_EQ(relative_error(1.5, BigFloat(1.0, 53)), 0.5);
  EXPECT_THROW(BigFloat::parse("nope", 64), Error);
}

TEST(OracleEigvals, ClosedFormTwoByTwo) {
  const auto l = oracle_eigvals(DPR1Matrix({2, 1}, {1, 1}, 1.0), 40);
  ASSERT_EQ(l.size(), 2u);
  const BigFloat r5 = sqrt(BigFloat(5.0, 300));
  const BigFloat two(2.0, 300), five(5.0, 300);
  EXPECT_LE(relative_error(l[0], (five + r5) / two), 1e-32);
  EXPECT_LE(relative_error(l[1], (five - r5) / two), 1e-32);
}

TEST(OracleEigvals, SecondExample) {
  const auto l = oracle_eigvals(*reduce(example2()).core, 34);
  const char* printed[] = {"11.000000000000005551115123125783", "1.0000000000000085712482686374087",
                           "1.0000000000000055511151231257826", "1.0000000000000025309819776141565"};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_LE(relative_error(l[k], number(printed[k])), 1e-31);
}

TEST(OracleEigvals, OneByOne) {
  const auto l = oracle_eigvals(DPR1Matrix({5}, {2}, 1.0));
  ASSERT_EQ(l.size(), 1u);
  EXPECT_EQ(l[0], BigFloat(9.0, 53));
  EXPECT_THROW(oracle_eigvals(DPR1Matrix({5}, {2}, 1.0), 10), Error);
}

TEST(OracleEigvec, FirstExampleFourthVector) {
  const auto a = *reduce(example1()).core;
  const auto l = oracle_eigvals(a, 40);
  const auto v = oracle_eigvec(a, l[3]);
  const char* printed[] = {"9.999999998999999e-18", "1.999999999800000e-18",
                           "2.499999999749999e-15", "-1.000000000000000",
                           "-2.499999999749999e-15", "-1.999999999800000e-18"};
  const double sign = v[3].sign() < 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_LE(relative_error(BigFloat(sign, 53) * v[i], number(printed[i])), 1e-15) << "i=" << i;
  }
}

TEST(OracleEigvec, OneByOne) {
  const DPR1Matrix a({5}, {2}, 1.0);
  const auto v = oracle_eigvec(a, oracle_eigvals(a)[0]);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(abs(v[0]).to_double(), 1.0);
}

TEST(OracleEigvec, RandomResidualIsTiny) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto a = random_core(6, seed);
    const auto l = oracle_eigvals(a, 40);
    const mpfr_prec_t prec = l[0].precision();
    BigFloat zz(0.0, prec);
    double norm_inf = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      double row = std::abs(a.d(i));
      for (std::size_t j = 0; j < a.size(); ++j) row += std::abs(a.rho() * a.z(i) * a.z(j));
      norm_inf = std::max(norm_inf, row);
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
      const auto v = oracle_eigvec(a, l[k]);
      BigFloat ztv(0.0, prec);
      for (std::size_t j = 0; j < a.size(); ++j) ztv += BigFloat(a.z(j), 53) * v[j];
      for (std::size_t i = 0; i < a.size(); ++i) {
        BigFloat r = BigFloat(a.d(i), 53) * v[i] +
                     BigFloat(a.rho(), 53) * BigFloat(a.z(i), 53) * ztv - l[k] * v[i];
        EXPECT_LE(std::abs(r.to_double()), 1e-28 * norm_inf) << "seed=" << seed << " k=" << k;
      }
    }
  }
}

TEST(OracleArrowhead, GoldenRatio) {
  ArrowheadMatrix m;
  m.delta = {1.0};
  m.w = {1.0};
  m.b = 0.0;
  const BigFloat phi = (BigFloat(1.0, 300) + sqrt(BigFloat(5.0, 300))) / BigFloat(2.0, 300);
  EXPECT_LE(relative_error(oracle_arrowhead_extreme(m, Side::rightmost, 40), phi), 1e-38);
}
