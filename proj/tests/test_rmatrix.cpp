#include <gtest/gtest.h>

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

#include "oracles.hpp"
#include "qgx/rmatrix.hpp"

using namespace qgx;

namespace {

const std::vector<Series>& grid() {
  static const std::vector<Series> g = {Series::make(SeriesTag::A, 2), Series::make(SeriesTag::A, 3),
                                        Series::make(SeriesTag::A, 4), Series::make(SeriesTag::B, 3),
                                        Series::make(SeriesTag::B, 5), Series::make(SeriesTag::C, 2),
                                        Series::make(SeriesTag::C, 4), Series::make(SeriesTag::C, 6),
                                        Series::make(SeriesTag::D, 4), Series::make(SeriesTag::D, 6)};
  return g;
}

double eps(const Series& s) { return s.tag == SeriesTag::C ? -1.0 : 1.0; }

}  // namespace

TEST(Series, ParityRule) {
  EXPECT_THROW(Series::make(SeriesTag::B, 4), InvalidSeries);
  EXPECT_THROW(Series::make(SeriesTag::C, 3), InvalidSeries);
  EXPECT_THROW(Series::make(SeriesTag::A, 1), InvalidSeries);
  EXPECT_THROW(Series::parse("e", 4), InvalidSeries);
  EXPECT_EQ(Series::make(SeriesTag::B, 5).n(), 2);
  EXPECT_EQ(Series::make(SeriesTag::D, 6).n(), 3);
  EXPECT_EQ(Series::make(SeriesTag::C, 4).name(), "C4");
}

TEST(Rho, DisplayedValues) {
  EXPECT_EQ(rho_doubled(Series::make(SeriesTag::C, 2)), (std::vector<int>{2, -2}));
  EXPECT_EQ(rho_doubled(Series::make(SeriesTag::D, 4)), (std::vector<int>{2, 0, 0, -2}));
  EXPECT_EQ(rho_doubled(Series::make(SeriesTag::B, 3)), (std::vector<int>{1, 0, -1}));
  for (const auto& s : grid()) {
    const auto r = rho_doubled(s);
    for (int j = 0; j < s.N; ++j) EXPECT_EQ(r[static_cast<std::size_t>(j)], -r[static_cast<std::size_t>(s.N - 1 - j)]);
  }
}

TEST(RMatrix, SeriesAEntries) {
  const RTensor R = build_R(Series::make(SeriesTag::A, 2));
  const RatFunc q = RatFunc::q_power(1);
  EXPECT_EQ(R.get(1, 1, 1, 1), q);
  EXPECT_EQ(R.get(1, 2, 1, 2), RatFunc(1));
  EXPECT_EQ(R.get(2, 1, 1, 2), RatFunc::q_minus_qinv());
  EXPECT_TRUE(R.get(1, 1, 1, 2).is_zero());
  EXPECT_TRUE(R.get(2, 2, 1, 2).is_zero());
  EXPECT_EQ(rhat(R).get(1, 2, 2, 1), RatFunc(1));
}

TEST(RMatrix, ExactBraidRelation) {
  for (const auto& s : grid()) {
    if (s.N > 5) continue;  // N = 6 runs in the acceptance suite
    EXPECT_TRUE(braid_check(rhat(build_R(s)))) << s.name();
  }
}

TEST(RMatrix, NumericYangBaxterOracle) {
  const double q = 0.73;
  for (const auto& s : grid()) {
    const Eigen::MatrixXd Rh = oracle::dense(rhat(build_R(s)), q);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(s.N, s.N);
    const Eigen::MatrixXd A = Eigen::kroneckerProduct(Rh, I), B = Eigen::kroneckerProduct(I, Rh);
    EXPECT_LT((A * B * A - B * A * B).norm(), 1e-10) << s.name();
  }
}

TEST(RMatrix, MinimalPolynomialOracle) {
  // R̂ has eigenvalues q, −1/q and, for B/C/D, ε q^{ε−N}.
  const double q = 0.7;
  for (const auto& s : grid()) {
    const Eigen::MatrixXd Rh = oracle::dense(rhat(build_R(s)), q);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(Rh.rows(), Rh.cols());
    Eigen::MatrixXd P = (Rh - q * I) * (Rh + I / q);
    if (s.tag != SeriesTag::A) P = P * (Rh - eps(s) * std::pow(q, eps(s) - s.N) * I);
    EXPECT_LT(P.norm(), 1e-9) << s.name();
    if (s.tag != SeriesTag::A && s.N > 2) EXPECT_GT(((Rh - q * I) * (Rh + I / q)).norm(), 1e-3) << s.name();
  }
}

TEST(RMatrix, ExactInverse) {
  for (const auto& s : {Series::make(SeriesTag::A, 3), Series::make(SeriesTag::C, 4), Series::make(SeriesTag::B, 3)}) {
    const RTensor R = build_R(s);
    EXPECT_EQ(R * inverse(R), RTensor::identity(s.N)) << s.name();
  }
}

TEST(RMatrix, SingularInverseThrows) {
  RTensor T(2);
  T.set(1, 1, 1, 1, RatFunc(1));
  EXPECT_THROW(inverse(T), SingularMatrix);
}

TEST(RMatrix, DumpRoundTrip) {
  const RTensor R = build_R(Series::make(SeriesTag::D, 4));
  EXPECT_EQ(RTensor::parse_dump(R.dump(), 4), R);
  const std::string first = R.dump().substr(0, R.dump().find('\n'));
  EXPECT_EQ(first.substr(0, 8), "1 1 1 1 ");
}

TEST(KTensor, ExplicitMatchesBraidForm) {
  for (const auto& s : grid()) {
    if (s.tag == SeriesTag::A) continue;
    EXPECT_EQ(ktensor_from_rhat(rhat(build_R(s))), ktensor_explicit(s)) << s.name();
  }
  EXPECT_THROW(ktensor_explicit(Series::make(SeriesTag::A, 2)), InvalidSeries);
}

TEST(KTensor, SeriesDCoefficientsAreUnsignedPowers) {
  const RTensor K = ktensor_explicit(Series::make(SeriesTag::D, 4));
  for (const auto& [key, v] : K.entries()) {
    ASSERT_TRUE(v.is_laurent());
    ASSERT_TRUE(v.num().is_monomial());
    EXPECT_EQ(v.num().leading_coeff(), 1);
  }
}

TEST(KTensor, PolynomialFit) {
  for (const auto& s : grid()) {
    if (s.tag == SeriesTag::A || s.N > 5) continue;
    const RTensor Rh = rhat(build_R(s));
    const RTensor K = ktensor_explicit(s);
    const KFit fit = k_polynomial_fit(s, Rh, K);
    ASSERT_TRUE(fit.in_span) << s.name();
    EXPECT_EQ(fit.unique, s.N > 2) << s.name();
    EXPECT_EQ(fit.a * (Rh * Rh) + fit.b * Rh + fit.c * RTensor::identity(s.N), K) << s.name();
    EXPECT_TRUE(fit.matches_displayed) << s.name();
  }
}
