#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "json.hpp"
#include "qgx/repthm.hpp"

using namespace qgx;

namespace {

const Complex kI(0, 1);

NCPoly T(int i, int j, int n) { return NCPoly::gen(i, j, n); }

std::vector<Complex> unit_grid(int m) {
  std::vector<Complex> g;
  for (int k = 0; k < m; ++k) g.push_back(std::polar(1.0, 2 * std::numbers::pi * (k + 0.5) / m));
  return g;
}

double rep_distance(const NumericRep& a, const NumericRep& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.t.size(); ++k) d = std::max(d, operator_norm(a.t[k] - b.t[k]));
  return d;
}

}  // namespace

TEST(Twist, ImaginaryUnitAtKOne) {
  NumericRep rep;
  rep.n = 1;
  rep.dim = 1;
  rep.t = {CMatrix::Identity(1, 1)};
  const NumericRep tw = twist(rep, kI, 1);
  ASSERT_TRUE(tw.mho);
  EXPECT_NEAR(std::abs((*tw.mho)(0, 0) - Complex(-1, 0)), 0, 1e-15);
  EXPECT_NEAR(std::abs(tw.at(1, 1)(0, 0) - kI), 0, 1e-15);
  EXPECT_THROW(twist(rep, Complex(2, 0), 1), RepError);
}

TEST(Extension, SeriesASpecialHasDeterminantTimesMho) {
  const RelationSystem sys = relation_system(Series::make(SeriesTag::A, 2), Variant::Special);
  EXPECT_EQ(sys.k, 1);
  ASSERT_EQ(sys.S3.size(), 1u);
  const NCPoly det = quantum_determinant(Series::make(SeriesTag::A, 2));
  EXPECT_EQ(sys.S3[0], det * mho_poly(2) - NCPoly::constant(RatFunc(1), 2));
}

TEST(Extension, EmptyR1AndR3AreLegal) {
  std::map<std::pair<int, int>, NCPoly> R0;
  R0.emplace(std::make_pair(1, 1), T(1, 1, 1));
  const RelationSystem sys = build_extension(1, 1, R0, {}, {});
  EXPECT_TRUE(sys.R1.empty());
  EXPECT_TRUE(sys.S3.empty());
  EXPECT_EQ(sys.S4.size(), 2u);
  EXPECT_EQ(sys.S0.size(), 1u);
}

TEST(Extension, DegreeChecks) {
  std::map<std::pair<int, int>, NCPoly> R0;
  R0.emplace(std::make_pair(1, 1), T(1, 1, 1) * T(1, 1, 1));
  EXPECT_THROW(build_extension(1, 1, R0, {}, {}), RelationDegreeError);
  std::map<std::pair<int, int>, NCPoly> ok;
  ok.emplace(std::make_pair(1, 1), T(1, 1, 1));
  EXPECT_THROW(build_extension(1, 1, ok, {}, {{T(1, 1, 1) * T(1, 1, 1) * T(1, 1, 1), 1}}), RelationDegreeError);
  EXPECT_THROW(relation_system(Series::make(SeriesTag::B, 3), Variant::Special), RelationDegreeError);
  EXPECT_THROW(relation_system(Series::make(SeriesTag::A, 2), Variant::Plain), InvalidVariant);
}

TEST(Extension, SymplecticTwoCounts) {
  const RelationSystem sys = relation_system(Series::make(SeriesTag::C, 2), Variant::Plain);
  EXPECT_EQ(sys.S4.size(), 8u);
  EXPECT_EQ(sys.S0.size(), 4u);
  EXPECT_EQ(sys.R0.size(), 4u);
}

TEST(Torus, CharactersSatisfyBothSides) {
  for (const auto& [s, base] : std::vector<std::pair<Series, Variant>>{{Series::make(SeriesTag::C, 2), Variant::Plain},
                                                                       {Series::make(SeriesTag::C, 4), Variant::Plain},
                                                                       {Series::make(SeriesTag::D, 4), Variant::Special},
                                                                       {Series::make(SeriesTag::A, 3), Variant::Special}}) {
    const RelationSystem sys = relation_system(s, base);
    std::vector<double> th(static_cast<std::size_t>(s.tag == SeriesTag::A ? s.N - 1 : s.n()));
    for (std::size_t k = 0; k < th.size(); ++k) th[k] = 0.4 + 0.7 * static_cast<double>(k);
    const NumericRep rep = torus_rep(s, base, torus_lambdas(s, th));
    EXPECT_LT(relation_residual(rep, sys.a_relations()), 1e-12) << s.name();
    for (const Complex lam : unit_grid(8)) {
      const NumericRep tw = twist(rep, lam, sys.k);
      EXPECT_LT(relation_residual(tw, sys.z_relations()), 1e-12) << s.name();
      const Untwisted u = untwist(tw, sys.k);
      EXPECT_LT(rep_distance(twist(u.rep, u.lambda, sys.k), tw), 1e-12) << s.name();
      EXPECT_LT(relation_residual(u.rep, sys.a_relations()), 1e-12) << s.name();
    }
    EXPECT_TRUE(torus_symbolic_check(s, sys, false).exact) << s.name();
    EXPECT_TRUE(torus_symbolic_check(s, sys, true).exact) << s.name();
  }
}

TEST(Torus, ConstraintViolations) {
  const Series c2 = Series::make(SeriesTag::C, 2);
  EXPECT_THROW(torus_rep(c2, Variant::Plain, {Complex(1, 0), kI}), ConstraintViolation);
  EXPECT_THROW(torus_rep(c2, Variant::Plain, {Complex(2, 0), Complex(0.5, 0)}), ConstraintViolation);
  EXPECT_THROW(torus_lambdas(Series::make(SeriesTag::A, 3), {0.1}), ConstraintViolation);
}

TEST(Commutant, IrreducibleAndDoubledCharacter) {
  const Series c2 = Series::make(SeriesTag::C, 2);
  const NumericRep rep = torus_rep(c2, Variant::Plain, torus_lambdas(c2, {0.3}));
  EXPECT_EQ(commutant_dim(rep), 1);
  EXPECT_EQ(commutant_dim(direct_sum(rep, rep)), 4);
}

TEST(Untwist, NonScalarMhoIsReducible) {
  const Series c2 = Series::make(SeriesTag::C, 2);
  const NumericRep a = twist(torus_rep(c2, Variant::Plain, torus_lambdas(c2, {0.3})), kI, 1);
  const NumericRep b = twist(torus_rep(c2, Variant::Plain, torus_lambdas(c2, {0.3})), Complex(1, 0), 1);
  EXPECT_THROW(untwist(direct_sum(a, b), 1), ReducibleRep);
}

TEST(ShiftModel, InteriorResiduals) {
  const RelationSystem sys = relation_system(Series::make(SeriesTag::C, 2), Variant::Plain);
  for (int L : {10, 24}) {
    const NumericRep rep = shift_rep_usp2(L, 0.5);
    EXPECT_TRUE(rep.truncated);
    EXPECT_LT(relation_residual(rep, sys.a_relations()), 1e-12) << L;
    for (const Complex lam : unit_grid(6)) EXPECT_LT(relation_residual(twist(rep, lam, sys.k), sys.z_relations()), 1e-11);
  }
  EXPECT_THROW(shift_rep_usp2(10, 1.5), RepError);
  EXPECT_THROW(commutant_dim(shift_rep_usp2(10, 0.5)), RepError);
}

TEST(Relations, JsonOfRep) {
  const Series c2 = Series::make(SeriesTag::C, 2);
  const auto j = nlohmann::json::parse(rep_json(torus_rep(c2, Variant::Plain, torus_lambdas(c2, {0.3}))));
  EXPECT_EQ(j["dimension"], 1);
  EXPECT_FALSE(j["truncated"].get<bool>());
}
