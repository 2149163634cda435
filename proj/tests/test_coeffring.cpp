#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qgx/coeffring.hpp"

using qgx::HalfLaurent;
using qgx::RatFunc;

namespace {

HalfLaurent random_laurent(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> exp(-4, 4), coef(-5, 5), len(1, 4);
  std::vector<HalfLaurent::Term> terms;
  for (int k = len(rng); k > 0; --k) {
    mpq_class c(coef(rng), 1 + (coef(rng) + 5) % 3);
    c.canonicalize();
    terms.emplace_back(exp(rng), c);
  }
  return HalfLaurent::from_terms(terms);
}

RatFunc random_ratfunc(std::mt19937_64& rng) {
  HalfLaurent den;
  do den = random_laurent(rng);
  while (den.is_zero() || std::abs(den.evaluate(std::sqrt(0.37))) < 1e-3);
  return RatFunc(random_laurent(rng), den);
}

}  // namespace

TEST(HalfLaurent, CanonicalTerms) {
  const HalfLaurent p = HalfLaurent::from_terms({{2, 1}, {-1, 3}, {2, -1}, {0, 0}});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.min_exp(), -1);
  EXPECT_EQ(p.coeff(-1), 3);
  EXPECT_TRUE((p - p).is_zero());
}

TEST(HalfLaurent, DivideExactAndGcd) {
  const HalfLaurent a = HalfLaurent::u_power(2) - HalfLaurent(1);  // u² − 1
  const HalfLaurent b = HalfLaurent::u_power(1) - HalfLaurent(1);
  EXPECT_EQ(HalfLaurent::divide_exact(a, b), HalfLaurent::u_power(1) + HalfLaurent(1));
  EXPECT_THROW(HalfLaurent::divide_exact(a, HalfLaurent::u_power(1) + HalfLaurent(2)), std::domain_error);
  EXPECT_EQ(HalfLaurent::gcd(a.shifted(-3), b * b), b);
}

TEST(RatFunc, FieldAxiomsAgainstFloatingPoint) {
  std::mt19937_64 rng(11);
  const double q0 = 0.37;
  for (int trial = 0; trial < 200; ++trial) {
    const RatFunc x = random_ratfunc(rng), y = random_ratfunc(rng);
    const double xv = x.evaluate(q0), yv = y.evaluate(q0);
    EXPECT_NEAR((x + y).evaluate(q0), xv + yv, 1e-9 * (1 + std::abs(xv) + std::abs(yv)));
    EXPECT_NEAR((x * y).evaluate(q0), xv * yv, 1e-9 * (1 + std::abs(xv * yv)));
    if (!y.is_zero()) {
      EXPECT_EQ((x / y) * y, x);
      EXPECT_NEAR((x / y).evaluate(q0), xv / yv, 1e-7 * (1 + std::abs(xv / yv)));
    }
    EXPECT_EQ(x - x, RatFunc(0));
  }
}

TEST(RatFunc, CanonicalFormMakesEqualitySyntactic) {
  const RatFunc u = RatFunc::u_power(1);
  const RatFunc lhs = (u * u - RatFunc(1)) / (u - RatFunc(1));
  EXPECT_EQ(lhs, u + RatFunc(1));
  EXPECT_TRUE(lhs.is_laurent());
  EXPECT_EQ(RatFunc(HalfLaurent(2), HalfLaurent(4)), RatFunc(mpq_class(1, 2)));
  EXPECT_EQ(RatFunc::q_minus_qinv(), RatFunc::q_power(1) - RatFunc::q_power(-1));
}

TEST(RatFunc, ExactEvaluationAtRationalSquares) {
  const RatFunc x = (RatFunc::u_power(3) + RatFunc(2)) / (RatFunc::q_power(1) - RatFunc(mpq_class(1, 3)));
  // q = 4/9, u = 2/3: (8/27 + 2) / (4/9 − 1/3) = (62/27) / (1/9) = 62/3
  EXPECT_TRUE(x.is_rational_square(mpq_class(4, 9)));
  EXPECT_EQ(x.evaluate_exact(mpq_class(4, 9)), mpq_class(62, 3));
  EXPECT_FALSE(x.is_rational_square(mpq_class(2)));
}

TEST(RatFunc, PoleAndZeroDivision) {
  EXPECT_THROW(RatFunc(1) / RatFunc(0), qgx::DivisionByZero);
  EXPECT_THROW(RatFunc(0).inverse(), qgx::DivisionByZero);
  const RatFunc x = RatFunc(1) / (RatFunc::q_power(1) - RatFunc(1));
  EXPECT_THROW(x.evaluate_exact(mpq_class(1)), qgx::PoleError);
}

TEST(RatFunc, TextRoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const RatFunc x = random_ratfunc(rng);
    EXPECT_EQ(RatFunc::parse(x.to_string()), x) << x.to_string();
  }
  EXPECT_THROW(RatFunc::parse("1*q^("), qgx::ParseError);
}
