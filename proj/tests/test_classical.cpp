#include <gtest/gtest.h>

#include <cmath>

#include "json.hpp"
#include "qgx/classical.hpp"

using namespace qgx::classical;

namespace {

const double kS = 1 / std::sqrt(2.0);

CMatrix I(int n) { return CMatrix::Identity(n, n); }

}  // namespace

TEST(Structure, Identities) {
  for (int n = 1; n <= 4; ++n) {
    const StructureMatrices m = structure_matrices(n);
    EXPECT_LT((m.J * m.J + I(2 * n)).norm(), 1e-14) << n;
    EXPECT_LT((m.K * m.K + I(2 * n)).norm(), 1e-14) << n;
    EXPECT_LT(unitarity_residual(m.S), 1e-14) << n;
    EXPECT_LT(unitarity_residual(m.Q_even), 1e-14) << n;
    EXPECT_LT(unitarity_residual(m.Q_odd), 1e-14) << n;
    EXPECT_LT((m.sqrtD_plus_even * m.sqrtD_minus_even - I(2 * n)).norm(), 1e-14) << n;
    EXPECT_LT((m.C * m.C - I(n)).norm(), 1e-14) << n;
  }
}

TEST(Structure, SizeTwoLiterals) {
  CMatrix J(2, 2);
  J << 0, 1, -1, 0;
  EXPECT_LT((J_matrix(1) - J).norm(), 1e-15);
  const CMatrix Q2 = Q_matrix(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(Q2(i, j)), kS, 1e-15);
  EXPECT_NEAR(std::abs(Q_matrix(3)(1, 1)), 1.0, 1e-15);
}

TEST(Maps, XiHasUnitDeterminant) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const CMatrix U = haar_unitary(3, seed);
    const CMatrix X = map_xi(U);
    EXPECT_NEAR(std::abs(X.determinant() - Complex(1, 0)), 0, 1e-12);
    EXPECT_LT(unitarity_residual(X), 1e-12);
  }
  EXPECT_THROW(map_xi(2.0 * I(2)), ClassicalError);
}

TEST(Maps, UpsilonCarriesSymplecticToKForm) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GroupSample s = sample(Group::USp, 1, seed);
    EXPECT_LT(characterize(s.matrix, Form::J).residual, 1e-12);
    const Characterization c = characterize(map_upsilon(s.matrix), Form::K);
    EXPECT_LT(c.residual, 1e-12);
    EXPECT_NEAR(std::abs(c.lambda - Complex(1, 0)), 0, 1e-12);
  }
}

TEST(Maps, WpCarriesOrthogonalToCForm) {
  for (int n : {2, 3, 4}) {
    const GroupSample s = sample(Group::O, n, 17);
    EXPECT_LT(characterize(map_wp(s.matrix), Form::C).residual, 1e-12) << n;
    EXPECT_GT(characterize(map_wp_literal(s.matrix), Form::C).residual, 1e-3) << n;
  }
  EXPECT_LT((map_wp(I(5)) - I(5)).norm(), 1e-14);
}

TEST(Branch, NegativeDeterminantDetected) {
  // diag(1, −1) ∈ O(2): ℘ sends it to an element of determinant −1 with λ = 1.
  CMatrix M = I(2);
  M(1, 1) = -1;
  const CMatrix W = map_wp(M);
  const Characterization c = characterize(W, Form::C);
  ASSERT_LT(c.residual, 1e-12);
  EXPECT_EQ(branch_check(W, c.lambda), Branch::Negative);
  EXPECT_EQ(branch_check(I(2), Complex(1, 0)), Branch::Positive);
}

TEST(Samples, SeedDeterministic) {
  EXPECT_EQ((sample(Group::SOT, 2, 9).matrix - sample(Group::SOT, 2, 9).matrix).norm(), 0.0);
  EXPECT_GT((sample(Group::SOT, 2, 9).matrix - sample(Group::SOT, 2, 10).matrix).norm(), 1e-6);
  EXPECT_THROW(parse_group("gl"), ClassicalError);
  EXPECT_EQ(group_size(Group::O, 3), 3);
  EXPECT_EQ(group_size(Group::SOT, 3), 6);
}

TEST(Sweep, AllGroupsSmallRanks) {
  for (Group g : {Group::USp, Group::O, Group::SO, Group::USpT, Group::OT, Group::SOT})
    for (int n = 1; n <= 3; ++n) {
      SweepOptions o;
      o.trials = 20;
      o.branch = g == Group::OT || g == Group::SOT;
      o.closure = true;
      const SweepReport r = sweep(g, n, o);
      EXPECT_TRUE(r.passed) << group_name(g) << n << (r.failures.empty() ? "" : " " + r.failures.front());
      EXPECT_LT(r.max_residual, 1e-10);
      EXPECT_LT(r.max_lambda_modulus_dev, 1e-10);
      if (g == Group::SOT) EXPECT_EQ(r.negative_branch, 0);
    }
}

TEST(Sweep, Json) {
  SweepOptions o;
  o.trials = 3;
  const auto j = nlohmann::json::parse(sweep_json(sweep(Group::USpT, 2, o)));
  EXPECT_EQ(j["kind"], "classical");
  EXPECT_TRUE(j["passed"].get<bool>());
}
