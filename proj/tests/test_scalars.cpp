#include <gtest/gtest.h>

#include "qthyper/scalars.hpp"
#include "test_util.hpp"

using namespace qthyper;

namespace {

Rational direct_product(const Rational& u, const Rational& q, int factors) {
  Rational r = 1;
  for (int i = 0; i < factors; ++i) r *= 1 - u * pow(q, i);
  return r;
}

const Rational half = make_rational(1, 2);
const Rational third = make_rational(1, 3);

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), make_rational(1, 2));
  EXPECT_EQ(parse_rational("1e-10"), pow(Rational(10), -10));
  EXPECT_EQ(parse_rational("-2.5"), make_rational(-5, 2));
  EXPECT_EQ(parse_rational("0.125E1"), make_rational(5, 4));
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_EQ(to_string(make_rational(6, -4)), "-3/2");
  EXPECT_EQ(to_decimal(make_rational(1, 3), 5), "3.3333e-1");
  EXPECT_EQ(to_decimal(Rational(1000), 5), "1e3");
}

TEST(QPochFinite, Examples) {
  EXPECT_EQ(qpoch_finite(make_rational(7, 3), half, 0), 1);
  EXPECT_EQ(qpoch_finite(half, half, 2), make_rational(3, 8));
  EXPECT_EQ(qpoch_finite(1, third, 4), 0);
}

TEST(QPochFinite, RecurrenceProperty) {
  testutil::RationalGen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    Rational u = gen.signed_value(3, 9), q = gen.unit(9);
    long m = gen.integer(0, 10);
    EXPECT_EQ(qpoch_finite(u, q, m + 1), qpoch_finite(u, q, m) * (1 - u * pow(q, m)));
  }
}

TEST(QPochInfinite, ZeroArgumentIsExactlyOne) {
  auto v = qpoch_infinite(0, half, make_rational(1, 1000));
  EXPECT_EQ(v.value, 1);
  EXPECT_EQ(v.tail_bound, 0);
}

TEST(QPochInfinite, AgreesWithLongDirectProduct) {
  Rational tol = pow(Rational(10), -12);
  auto v = qpoch_infinite(half, half, tol);
  EXPECT_LE(v.tail_bound, tol);
  Rational oracle = direct_product(half, half, 60);
  // The 60-factor oracle is itself within 2^-59 of the limit.
  EXPECT_LE(abs(v.value - oracle), v.tail_bound + pow(half, 59));
  EXPECT_NEAR(to_double(v.value), 0.2887880950866024, 1e-12);
}

TEST(QPochInfinite, CertifiedBoundIsHonest) {
  testutil::RationalGen gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    Rational q = gen.unit(6), u = gen.signed_value(1, 7);
    if (abs(u) >= 1) continue;
    auto v = qpoch_infinite(u, q, make_rational(1, 1000000));
    // Compare with a far longer product whose own error is negligible.
    Rational ref = direct_product(u, q, 400);
    EXPECT_LE(abs(v.value - ref), v.tail_bound + pow(q, 300));
  }
}

TEST(QPochInfinite, FunctionalEquation) {
  testutil::RationalGen gen(17);
  Rational tol = pow(Rational(10), -15);
  for (int trial = 0; trial < 20; ++trial) {
    Rational q = gen.unit(7), u = gen.signed_value(1, 7);
    if (abs(u) >= 1) continue;
    auto a = qpoch_infinite(u, q, tol);
    auto b = qpoch_infinite(u * q, q, tol);
    // (u;q)_inf = (1-u) (uq;q)_inf
    EXPECT_TRUE(abs(a.value - (1 - u) * b.value) <= a.tail_bound + abs(1 - u) * b.tail_bound);
  }
}

TEST(QPochInfinite, RejectsOutOfRange) {
  EXPECT_THROW(qpoch_infinite(1, half, half), std::invalid_argument);
  EXPECT_THROW(qpoch_infinite(half, 1, half), std::invalid_argument);
  EXPECT_THROW(qpoch_infinite(half, half, 0), std::invalid_argument);
}

TEST(QGamma, Examples) {
  EXPECT_EQ(qgamma(1, half).value, 1);
  EXPECT_EQ(qgamma(2, third).value, 1);
  EXPECT_EQ(qgamma(3, half).value, make_rational(3, 2));
  EXPECT_TRUE(qgamma(3, half).exact());
  EXPECT_THROW(qgamma(make_rational(1, 2), half), std::domain_error);
  EXPECT_THROW(qgamma(0, half), std::domain_error);
}

TEST(QGamma, RecurrenceProperty) {
  for (const Rational& q : {half, third, make_rational(2, 7)}) {
    for (long x = 1; x < 12; ++x) {
      Rational ratio = qgamma(x + 1, q).value / qgamma(x, q).value;
      EXPECT_EQ(ratio, (1 - pow(q, x)) / (1 - q));
    }
  }
}

TEST(QGammaN, Examples) {
  EXPECT_EQ(qgamma_n(5, 2, 1, half).value, qgamma(5, half).value);
  EXPECT_EQ(qgamma_n(3, 1, 2, half).value, make_rational(3, 2));
  EXPECT_EQ(qgamma_n(1, 0, 3, third).value, 1);
}

TEST(RisingFactorial, Examples) {
  EXPECT_EQ(rising_factorial(make_rational(5, 3), 0), 1);
  EXPECT_EQ(rising_factorial(0, 3), 6);
  EXPECT_EQ(rising_factorial(2, 2), 12);
  // (x+a)!/x! for integer x
  EXPECT_EQ(rising_factorial(4, 3), Rational(factorial(7)) / Rational(factorial(4)));
}

TEST(RisingFactorial, SplitProperty) {
  testutil::RationalGen gen(23);
  for (int trial = 0; trial < 40; ++trial) {
    Rational x = gen.signed_value(5, 11);
    long a = gen.integer(0, 8), b = gen.integer(0, 8);
    EXPECT_EQ(rising_factorial(x, a) * rising_factorial(x + a, b), rising_factorial(x, a + b));
  }
}

TEST(TruncatedValue, IntervalArithmeticContainsTruth) {
  TruncatedValue a{make_rational(3, 2), make_rational(1, 100)};
  TruncatedValue b{make_rational(-2, 3), make_rational(1, 50)};
  Rational xa = make_rational(3, 2) - make_rational(1, 100);  // an admissible true value
  Rational xb = make_rational(-2, 3) + make_rational(1, 50);
  EXPECT_TRUE((a * b).contains(xa * xb));
  EXPECT_TRUE((a / b).contains(xa / xb));
  EXPECT_TRUE((a + b).contains(xa + xb));
  EXPECT_THROW(a / TruncatedValue(make_rational(1, 100), make_rational(1, 50)), std::domain_error);
}
