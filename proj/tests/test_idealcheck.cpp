#include <gtest/gtest.h>

#include <algorithm>

#include "json.hpp"
#include "qgx/idealcheck.hpp"

using namespace qgx;

namespace {

NCPoly V(int i, int j, int N) { return NCPoly::gen(i, j, N); }
RatFunc q(int e = 1) { return RatFunc::q_power(e); }

// Quantum plane xy = q yx with x = V11, y = V12.
std::vector<NCPoly> plane() { return {V(1, 1, 2) * V(1, 2, 2) - q() * (V(1, 2, 2) * V(1, 1, 2))}; }

BatteryOptions fast() {
  BatteryOptions o;
  o.diagnostics = false;
  return o;
}

}  // namespace

TEST(Membership, QuantumPlaneMemberWithReplayableCertificate) {
  const NCPoly x = V(1, 1, 2), y = V(1, 2, 2);
  // x·x·y − q² y·x·x = x(xy − qyx) + q(xy − qyx)x
  MembershipProblem p{plane(), x * x * y - q(2) * (y * x * x), 3};
  const MembershipReport r = membership(p);
  ASSERT_TRUE(r.in_span);
  EXPECT_FALSE(r.certificate.empty());
  EXPECT_EQ(replay_certificate(r.certificate, p.generators), p.target);
  EXPECT_FALSE(r.digest.empty());
}

TEST(Membership, NonMemberKeepsNormalForm) {
  const NCPoly x = V(1, 1, 2), y = V(1, 2, 2);
  MembershipProblem p{plane(), x * y - y * x, 3};
  const MembershipReport r = membership(p);
  EXPECT_FALSE(r.in_span);
  EXPECT_FALSE(r.residual.is_zero());
}

TEST(Membership, TargetAboveBoundThrows) {
  const NCPoly x = V(1, 1, 2);
  MembershipProblem p{plane(), x * x * x, 2};
  EXPECT_THROW(membership(p), DegreeBoundError);
}

TEST(Membership, DigestIsDeterministic) {
  const NCPoly x = V(1, 1, 2), y = V(1, 2, 2);
  MembershipProblem p{plane(), y * (x * y) - q() * (y * y * x), 3};
  EXPECT_EQ(membership(p).digest, membership(p).digest);
}

TEST(TensorMembership, SumOfOneSidedIdeals) {
  const NCPoly g = plane()[0], x = V(1, 1, 2);
  const TensorPoly target = TensorPoly::pure(g, x) + TensorPoly::pure(x * x, g);
  const MembershipReport r = tensor_membership(target, plane(), 2, 2);
  ASSERT_TRUE(r.in_span);
  EXPECT_EQ(replay_tensor_certificate(r.tensor_certificate, plane()), target);
  EXPECT_FALSE(tensor_membership(TensorPoly::pure(x, x), plane(), 2, 2).in_span);
}

TEST(Battery, SmallPresentationsPass) {
  for (const auto& [s, v] : std::vector<std::pair<Series, Variant>>{{Series::make(SeriesTag::C, 2), Variant::Plain},
                                                                    {Series::make(SeriesTag::C, 2), Variant::Tilde},
                                                                    {Series::make(SeriesTag::A, 2), Variant::Special},
                                                                    {Series::make(SeriesTag::A, 2), Variant::Tilde}}) {
    const BatteryReport r = battery(build_presentation(s, v), fast());
    EXPECT_TRUE(r.all_passed()) << r.presentation;
    EXPECT_FALSE(r.checks.empty());
    for (const auto& c : r.checks)
      if (c.role == "claim") EXPECT_TRUE(c.passed()) << r.presentation << " " << c.name << " " << c.witness;
  }
}

TEST(Battery, Deterministic) {
  const Presentation p = build_presentation(Series::make(SeriesTag::C, 2), Variant::Tilde);
  const auto a = battery(p, fast()), b = battery(p, fast());
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t k = 0; k < a.checks.size(); ++k) {
    EXPECT_EQ(a.checks[k].name, b.checks[k].name);
    EXPECT_EQ(a.checks[k].certificate_digest, b.checks[k].certificate_digest);
  }
}

TEST(Battery, MutatedRMatrixFails) {
  const Series s = Series::make(SeriesTag::C, 2);
  RTensor Rh = rhat(build_R(s));
  Rh.set(1, 2, 2, 1, Rh.get(1, 2, 2, 1) + RatFunc::q_power(1));
  PresentationOptions po;
  po.rhat_override = Rh;
  const BatteryReport r = battery(build_presentation(s, Variant::Plain, po), fast());
  EXPECT_FALSE(r.all_passed());
}

TEST(Battery, JsonListsEveryCheck) {
  const BatteryReport r = battery(build_presentation(Series::make(SeriesTag::A, 2), Variant::Special), fast());
  const auto j = nlohmann::json::parse(battery_json({r}));
  EXPECT_EQ(j["kind"], "verify");
  EXPECT_EQ(j["reports"][0]["checks"].size(), r.checks.size());
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Antipode, SquareOnSeriesAIsConjugationByRho) {
  // S²(V[1,2]) = q⁻² V[1,2] modulo the SL_q(2) ideal.
  const Presentation p = build_presentation(Series::make(SeriesTag::A, 2), Variant::Special);
  const NCPoly s2 = anti_hom_apply(*p.antipode, anti_hom_apply(*p.antipode, V(1, 2, 2)));
  MembershipProblem prob{p.relations, s2 - q(-2) * V(1, 2, 2), 4};
  EXPECT_TRUE(membership(prob, {false}).in_span);
}

TEST(Battery, CoproductOfRelationsLiesInTheTensorIdeal) {
  for (const auto& s : {Series::make(SeriesTag::C, 2), Series::make(SeriesTag::B, 3)}) {
    const auto rels = frt_relations(rhat(build_R(s)));
    for (const auto& g : rels) EXPECT_TRUE(tensor_membership(coproduct(g, s.N), rels, s.N, 2).in_span) << g.to_string();
  }
}

TEST(Battery, FlippedSignInOneRelationFails) {
  // V[3,3]V[2,3] = q⁻¹ V[2,3]V[3,3] with the sign reversed still certifies every
  // claim of groups a, b, d, f, g; the coproduct check in group e rejects it.
  Presentation p = build_presentation(Series::make(SeriesTag::B, 3), Variant::Plain);
  const NCPoly target = NCPoly::gen(3, 3, 3) * NCPoly::gen(2, 3, 3) - q(-1) * (NCPoly::gen(2, 3, 3) * NCPoly::gen(3, 3, 3));
  auto it = std::find_if(p.relations.begin(), p.relations.begin() + static_cast<std::ptrdiff_t>(p.frt_count),
                         [&](const NCPoly& r) { return r == target || r == -target; });
  ASSERT_NE(it, p.relations.begin() + static_cast<std::ptrdiff_t>(p.frt_count));
  *it = NCPoly::gen(3, 3, 3) * NCPoly::gen(2, 3, 3) + q(-1) * (NCPoly::gen(2, 3, 3) * NCPoly::gen(3, 3, 3));
  BatteryOptions o = fast();
  o.groups = "e";
  const BatteryReport r = battery(p, o);
  EXPECT_FALSE(r.all_passed());
}
