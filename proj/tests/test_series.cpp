#include <gtest/gtest.h>

#include "qthyper/series.hpp"
#include "test_util.hpp"

using namespace qthyper;

namespace {

const Rational half = make_rational(1, 2);
const Rational third = make_rational(1, 3);

ParamPoint random_params(testutil::RationalGen& gen) {
  for (;;) {
    Rational q = gen.unit(7), t = gen.unit(7);
    if (q != t) return ParamPoint(q, t);
  }
}

Rational random_parameter(testutil::RationalGen& gen) {
  for (;;) {
    Rational a = gen.signed_value(3, 7);
    if (a != 0 && a != 1) return a;
  }
}

}  // namespace

TEST(PhiOne, ZeroPhiZeroIsInverseProduct) {
  testutil::RationalGen gen(11);
  for (int trial = 0; trial < 3; ++trial) {
    ParamPoint pp = random_params(gen);
    MacdonaldBasis basis(pp);
    for (int n = 1; n <= 3; ++n) {
      TruncSeries lhs = phi_one(HyperParams({}, {}, pp, n, 6), basis);
      TruncSeries rhs = product_series(0, n, pp.q, 6);
      EXPECT_EQ(first_difference(lhs, rhs), std::nullopt) << "n=" << n << " q=" << pp.q << " t=" << pp.t;
    }
  }
}

TEST(PhiOne, OnePhiZeroIsProductRatio) {
  testutil::RationalGen gen(12);
  for (int trial = 0; trial < 2; ++trial) {
    ParamPoint pp = random_params(gen);
    Rational a = random_parameter(gen);
    MacdonaldBasis basis(pp);
    for (int n = 1; n <= 3; ++n) {
      TruncSeries lhs = phi_one(HyperParams({a}, {}, pp, n, 6), basis);
      EXPECT_EQ(first_difference(lhs, product_series(a, n, pp.q, 6)), std::nullopt) << "n=" << n << " a=" << a;
    }
  }
}

TEST(PhiOne, ZeroUpperParameterIsNeutral) {
  ParamPoint pp(half, third);
  MacdonaldBasis basis(pp);
  EXPECT_EQ(phi_one(HyperParams({0}, {}, pp, 2, 4), basis), phi_one(HyperParams({}, {}, pp, 2, 4), basis));
}

TEST(PhiOne, ProductSeriesLowDegree) {
  // 1/(x;q)_inf = 1 + x/(1-q) + ...
  TruncSeries s = product_series(0, 1, half, 2);
  EXPECT_EQ(s.poly.coeff({1}), 2);
  EXPECT_EQ(s.poly.coeff({2}), Rational(1) / ((1 - half) * (1 - half * half)));
}

TEST(HyperParams, VanishingLowerParameter) {
  ParamPoint pp(half, third);
  EXPECT_THROW(HyperParams({}, {pow(half, -1)}, pp, 1, 3), std::domain_error);
  EXPECT_NO_THROW(HyperParams({}, {pow(half, -1)}, pp, 1, 1));
  // b = t on row 2 of a two-row partition: b t^{-1} = 1
  EXPECT_THROW(HyperParams({}, {third}, pp, 2, 2), std::domain_error);
}

TEST(PhiTwo, TruncationAtZeroIsOne) {
  ParamPoint pp(half, third);
  MacdonaldBasis basis(pp);
  TruncSeries2 s = phi_two(HyperParams({half}, {}, pp, 2, 0), 0, basis);
  ASSERT_EQ(s.terms.size(), 1u);
  EXPECT_EQ(s.coeff(Partition{}, Partition{}), 1);
}

TEST(PhiTwo, KernelIdentity) {
  testutil::RationalGen gen(13);
  for (int trial = 0; trial < 2; ++trial) {
    ParamPoint pp = random_params(gen);
    MacdonaldBasis basis(pp);
    for (int n = 1; n <= 3; ++n) {
      TruncSeries2 lhs = phi_two(HyperParams({pow(pp.t, n)}, {}, pp, n, 4), 4, basis);
      auto diff = first_difference(lhs, kernel_Pi(n, pp, 4));
      EXPECT_FALSE(diff.has_value()) << "n=" << n << " at " << diff->first << " x " << diff->second;
    }
  }
}

TEST(KernelPi, LowDegreeComponents) {
  ParamPoint pp(half, third);
  TruncSeries2 pi = kernel_Pi(2, pp, 1);
  EXPECT_EQ(pi.coeff({}, {}), 1);
  EXPECT_EQ(pi.coeff({1}, {1}), (1 - pp.t) / (1 - pp.q));
  EXPECT_EQ(pi.terms.size(), 2u);
}

TEST(KernelPi, CauchySum) {
  ParamPoint pp(make_rational(2, 5), make_rational(3, 4));
  MacdonaldBasis basis(pp);
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(first_difference(cauchy_sum(n, basis, 4), kernel_Pi(n, pp, 4)), std::nullopt);
}

TEST(PhiTwo, SpecializationRecoversPhiOne) {
  testutil::RationalGen gen(14);
  for (int trial = 0; trial < 4; ++trial) {
    ParamPoint pp = random_params(gen);
    MacdonaldBasis basis(pp);
    int r = static_cast<int>(gen.integer(0, 2)), s = static_cast<int>(gen.integer(0, 2));
    std::vector<Rational> a, b;
    for (int i = 0; i < r; ++i) a.push_back(random_parameter(gen));
    for (int i = 0; i < s; ++i) b.push_back(random_parameter(gen));
    for (int n = 1; n <= 3; ++n) {
      HyperParams hp(a, b, pp, n, 4);
      TruncSeries2 two = phi_two(hp, 4, basis);
      TruncSeries one = phi_one(hp, basis);
      EXPECT_EQ(first_difference(specialize_y_substitution(two, pp.t), one), std::nullopt) << "n=" << n;
      EXPECT_EQ(first_difference(specialize_y_homomorphism(two, pp.t), one), std::nullopt) << "n=" << n;
    }
  }
}

TEST(PhiTwo, JstarConstructionAgrees) {
  ParamPoint pp(make_rational(1, 3), make_rational(4, 7));
  MacdonaldBasis basis(pp);
  for (int n = 1; n <= 3; ++n) {
    HyperParams hp({make_rational(-2, 3), make_rational(5, 2)}, {make_rational(7, 3)}, pp, n, 4);
    EXPECT_EQ(first_difference(phi_two(hp, 4, basis), phi_two_via_jstar(hp, 4, basis)), std::nullopt) << n;
  }
}

TEST(ProductSeries, FiniteInverse) {
  // 1/(x;q)_1 = 1/(1-x)
  TruncSeries s = finite_inverse_product_series(1, 1, half, 4);
  for (int d = 0; d <= 4; ++d) EXPECT_EQ(s.poly.coeff(d == 0 ? Partition{} : Partition{d}), 1);
  EXPECT_EQ(qbinomial(4, 2, half), qpoch_finite(half, half, 4) / pow(qpoch_finite(half, half, 2), 2));
  EXPECT_EQ(qbinomial(3, 5, half), 0);
}
