#include <gtest/gtest.h>

#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "oracles.hpp"
#include "qgx/freealg.hpp"

using namespace qgx;
using oracle::CMat;

namespace {

constexpr double kQ = 0.61;

NCPoly random_poly(std::mt19937_64& rng, int N, int max_len, bool with_t) {
  std::uniform_int_distribution<int> idx(1, N), len(0, max_len), coef(-3, 3), tp(0, with_t ? 2 : 0);
  NCPoly p(N);
  for (int k = 0; k < 4; ++k) {
    Word w;
    for (int l = len(rng); l > 0; --l)
      w.letters.push_back({static_cast<std::uint8_t>(idx(rng)), static_cast<std::uint8_t>(idx(rng))});
    w.tpow = tp(rng);
    p.add_term(w, RatFunc(coef(rng)) * RatFunc::q_power(coef(rng)));
  }
  return p;
}

std::vector<CMat> random_mats(std::mt19937_64& rng, int N, int dim) {
  std::normal_distribution<double> g;
  std::vector<CMat> m;
  for (int k = 0; k < N * N; ++k) {
    CMat x(dim, dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) x(a, b) = {g(rng), g(rng)};
    m.push_back(x);
  }
  return m;
}

}  // namespace

TEST(NCPoly, CoproductOfGeneratorAndT) {
  const TensorPoly d = coproduct(NCPoly::gen(1, 1, 2), 2);
  const TensorPoly expect =
      TensorPoly::pure(NCPoly::gen(1, 1, 2), NCPoly::gen(1, 1, 2)) + TensorPoly::pure(NCPoly::gen(1, 2, 2), NCPoly::gen(2, 1, 2));
  EXPECT_EQ(d, expect);
  EXPECT_EQ(coproduct(NCPoly::t(1, 2), 2), TensorPoly::pure(NCPoly::t(1, 2), NCPoly::t(1, 2)));
}

TEST(NCPoly, CounitOnGenerators) {
  EXPECT_EQ(counit(NCPoly::gen(1, 2, 2)), RatFunc(0));
  EXPECT_EQ(counit(NCPoly::gen(1, 1, 2) * NCPoly::t(1, 2)), RatFunc(1));
}

TEST(NCPoly, ProductMatchesMatrixEvaluation) {
  std::mt19937_64 rng(5);
  const int N = 3, dim = 3;
  for (int trial = 0; trial < 30; ++trial) {
    const auto X = random_mats(rng, N, dim);
    // t is central in the algebra, so only a scalar image is a representation.
    const CMat Tc = CMat::Identity(dim, dim) * std::complex<double>(0.3, 0.8);
    auto rep = [&](int i, int j) { return X[static_cast<std::size_t>((i - 1) * N + (j - 1))]; };
    const NCPoly a = random_poly(rng, N, 3, true), b = random_poly(rng, N, 3, true);
    const CMat lhs = oracle::evaluate(a * b, kQ, dim, rep, Tc);
    const CMat rhs = oracle::evaluate(a, kQ, dim, rep, Tc) * oracle::evaluate(b, kQ, dim, rep, Tc);
    EXPECT_LT((lhs - rhs).norm(), 1e-9 * (1 + rhs.norm()));
  }
}

TEST(NCPoly, CoproductMatchesTensorRepresentation) {
  // (X ⊗ Y)(V[i,j]) = Σ_k X_ik ⊗ Y_kj is the representation behind Δ.
  std::mt19937_64 rng(9);
  const int N = 2, dim = 2;
  for (int trial = 0; trial < 20; ++trial) {
    const auto X = random_mats(rng, N, dim), Y = random_mats(rng, N, dim);
    auto at = [&](const std::vector<CMat>& m, int i, int j) { return m[static_cast<std::size_t>((i - 1) * N + (j - 1))]; };
    auto tensor_rep = [&](int i, int j) {
      CMat s = CMat::Zero(dim * dim, dim * dim);
      for (int k = 1; k <= N; ++k) s += Eigen::kroneckerProduct(at(X, i, k), at(Y, k, j)).eval();
      return s;
    };
    const NCPoly p = random_poly(rng, N, 3, false);
    const CMat direct = oracle::evaluate(p, kQ, dim * dim, tensor_rep);
    CMat via = CMat::Zero(dim * dim, dim * dim);
    const TensorPoly d = coproduct(p, N);
    for (const auto& [k, c] : d.terms()) {
      const CMat l = oracle::evaluate(NCPoly::monomial(k.first, 1, N), kQ, dim, [&](int i, int j) { return at(X, i, j); });
      const CMat r = oracle::evaluate(NCPoly::monomial(k.second, 1, N), kQ, dim, [&](int i, int j) { return at(Y, i, j); });
      via += c.evaluate(kQ) * Eigen::kroneckerProduct(l, r).eval();
    }
    EXPECT_LT((direct - via).norm(), 1e-9 * (1 + direct.norm()));
  }
}

TEST(NCPoly, CounitLaws) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const NCPoly p = random_poly(rng, 3, 3, true);
    const TensorPoly d = coproduct(p, 3);
    EXPECT_EQ(counit_left(d), p);
    EXPECT_EQ(counit_right(d), p);
  }
}

TEST(NCPoly, AntiHomomorphismReversesWords) {
  GeneratorImages img(2);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) img.set(i, j, NCPoly::gen(j, i, 2));
  img.t = NCPoly::t(1, 2);
  const NCPoly w = NCPoly::gen(1, 2, 2) * NCPoly::gen(2, 2, 2) * NCPoly::t(1, 2);
  EXPECT_EQ(anti_hom_apply(img, w), NCPoly::gen(2, 2, 2) * NCPoly::gen(2, 1, 2) * NCPoly::t(1, 2));
  EXPECT_EQ(hom_apply(img, w), NCPoly::gen(2, 1, 2) * NCPoly::gen(2, 2, 2) * NCPoly::t(1, 2));
}

TEST(NCPoly, MissingImageThrows) {
  GeneratorImages img(2);
  img.set(1, 1, NCPoly::gen(1, 1, 2));
  EXPECT_THROW(hom_apply(img, NCPoly::gen(1, 2, 2)), MissingImage);
}

TEST(NCPoly, TextRoundTrip) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const NCPoly p = random_poly(rng, 4, 4, true);
    EXPECT_EQ(NCPoly::parse(p.to_string(), 4), p) << p.to_string();
  }
}

TEST(NCMatrix, GenericTimesIdentity) {
  const NCMatrix V = NCMatrix::generic(3);
  EXPECT_EQ(V * NCMatrix::identity(3), V);
  EXPECT_EQ((V * V).at(1, 2), NCPoly::gen(1, 1, 3) * NCPoly::gen(1, 2, 3) + NCPoly::gen(1, 2, 3) * NCPoly::gen(2, 2, 3) +
                                  NCPoly::gen(1, 3, 3) * NCPoly::gen(3, 2, 3));
}
