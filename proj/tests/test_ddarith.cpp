#include <gmpxx.h>
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dpr1/ddarith.hpp"
#include "dpr1/error.hpp"

using namespace dpr1;

namespace {

mpq_class exact(const DoubleDouble& x) { return mpq_class(x.hi) + mpq_class(x.lo); }

// |x - ref| / |ref| as a double.
double rel_err(const DoubleDouble& x, const mpq_class& ref) {
  mpq_class d = exact(x) - ref;
  return std::abs(d.get_d()) / std::abs(ref.get_d());
}

double random_double(std::mt19937_64& rng, int emin, int emax) {
  std::uniform_real_distribution<double> mant(1.0, 2.0);
  std::uniform_int_distribution<int> ex(emin, emax);
  const double s = (rng() & 1) ? -1.0 : 1.0;
  return s * std::ldexp(mant(rng), ex(rng));
}

}  // namespace

TEST(TwoSum, Examples) {
  EXPECT_EQ(dd::two_sum(1.0, 0x1p-53), DoubleDouble(1.0, 0x1p-53));
  EXPECT_EQ(dd::two_sum(3.0, 4.0), DoubleDouble(7.0, 0.0));
  const DoubleDouble s = dd::two_sum(1e20, 1.0);
  EXPECT_EQ(s.hi, 1e20);
  EXPECT_EQ(exact(s), mpq_class(mpz_class("100000000000000000001")));
}

TEST(TwoSum, ExactOnRandomPairs) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20000; ++t) {
    const double a = random_double(rng, -60, 60);
    const double b = random_double(rng, -60, 60);
    const DoubleDouble s = dd::two_sum(a, b);
    ASSERT_EQ(exact(s), mpq_class(a) + mpq_class(b)) << a << " " << b;
    ASSERT_EQ(s.hi, a + b);
    const DoubleDouble d = dd::two_diff(a, b);
    ASSERT_EQ(exact(d), mpq_class(a) - mpq_class(b));
  }
}

TEST(TwoProd, Examples) {
  const double a = 1.0 + 0x1p-27;
  const double b = 1.0 - 0x1p-27;
  const DoubleDouble p = dd::two_prod(a, b);
  EXPECT_EQ(p.hi, a * b);
  EXPECT_EQ(exact(p), mpq_class(1) - mpq_class(1, mpz_class(1) << 54));
  EXPECT_EQ(dd::two_prod(2.0, 0.5), DoubleDouble(1.0, 0.0));
  EXPECT_EQ(dd::two_prod(3.0, 7.0), DoubleDouble(21.0, 0.0));
}

TEST(TwoProd, ExactOnRandomPairsIncludingHugeOperands) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20000; ++t) {
    const double a = random_double(rng, -400, 500);
    const double b = random_double(rng, -400, 500);
    const DoubleDouble p = dd::two_prod(a, b);
    ASSERT_EQ(exact(p), mpq_class(a) * mpq_class(b)) << a << " " << b;
  }
}

TEST(DoubleDouble, Identities) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 1000; ++t) {
    const double hi = random_double(rng, -30, 30);
    const DoubleDouble x = dd::quick_two_sum(hi, random_double(rng, -30, 30) * 0x1p-60);
    EXPECT_EQ(dd::add(x, DoubleDouble(0.0)), x);
    EXPECT_EQ(dd::mul(x, DoubleDouble(1.0)), x);
    EXPECT_EQ(dd::sub(x, x), DoubleDouble(0.0));
  }
}

TEST(DoubleDouble, OneThird) {
  const DoubleDouble q = dd::div(DoubleDouble(1.0), DoubleDouble(3.0));
  EXPECT_LE(rel_err(q, mpq_class(1, 3)), 1e-30);
}

TEST(DoubleDouble, DivisionByZeroThrows) {
  EXPECT_THROW(dd::div(DoubleDouble(1.0), DoubleDouble(0.0)), Error);
}

TEST(SumOfQuotients, Examples) {
  EXPECT_EQ(dd::sum_of_quotients(std::vector<double>{1}, std::vector<double>{2}),
            DoubleDouble(0.5, 0.0));
  const DoubleDouble s =
      dd::sum_of_quotients(std::vector<double>{1, 1}, std::vector<double>{3, 3});
  EXPECT_LE(rel_err(s, mpq_class(2, 3)), 1e-30);
}

TEST(SumOfQuotients, MatchesRationalSumWithoutCancellation) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> num(50), den(50);
    mpq_class ref = 0;
    for (std::size_t k = 0; k < num.size(); ++k) {
      num[k] = std::abs(random_double(rng, -20, 20));
      den[k] = std::abs(random_double(rng, -20, 20));
      ref += mpq_class(num[k]) / mpq_class(den[k]);
    }
    EXPECT_LE(rel_err(dd::sum_of_quotients(num, den), ref), 1e-30);
  }
}

TEST(SumOfQuotients, Errors) {
  EXPECT_THROW(dd::sum_of_quotients(std::vector<double>{1}, std::vector<double>{0}), Error);
  EXPECT_THROW(dd::sum_of_quotients(std::vector<double>{1, 2}, std::vector<double>{1}), Error);
}
