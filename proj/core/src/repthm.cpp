#include "qgx/repthm.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

namespace qgx {

namespace {

bool is_mho(const Letter& l) { return l.i == 0 && l.j == 0; }

NCPoly T(int i, int j, int n) { return NCPoly::gen(i, j, n); }

NCPoly one(int n) { return NCPoly::constant(RatFunc(1), n); }

int homogeneous_degree(const NCPoly& p) {
  int d = -1;
  for (const auto& [w, c] : p.terms()) {
    const int wd = static_cast<int>(w.letters.size());
    if (d >= 0 && wd != d) return -1;
    d = wd;
  }
  return d;
}

std::string pair_label(const std::string& head, int i, int j) {
  return head + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

}  // namespace

NCPoly mho_poly(int n) {
  Word w;
  w.letters.push_back(kMho);
  return NCPoly::monomial(w, RatFunc(1), n);
}

std::string relation_to_string(const NCPoly& p) {
  std::string s = p.to_string();
  for (std::size_t pos; (pos = s.find("V[0,0]")) != std::string::npos;) s.replace(pos, 6, "mho");
  for (std::size_t pos = 0; (pos = s.find("V[", pos)) != std::string::npos;) s.replace(pos, 1, "t"), ++pos;
  return s;
}

RelationSystem build_extension(int n, int k, std::map<std::pair<int, int>, NCPoly> R0, std::vector<NCPoly> R1,
                               std::vector<std::pair<NCPoly, int>> R3) {
  if (n < 1 || k < 1) throw RelationDegreeError("n and k must be positive");
  for (const auto& [ij, s] : R0)
    if (homogeneous_degree(s) != k)
      throw RelationDegreeError(pair_label("s", ij.first, ij.second) + " is not homogeneous of degree " +
                                std::to_string(k));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (!R0.count({i, j})) throw RelationDegreeError("missing " + pair_label("s", i, j));
  for (const auto& p : R1)
    if (homogeneous_degree(p) < 0) throw RelationDegreeError("R1 relation is not homogeneous");
  for (const auto& [E, m] : R3)
    if (m < 1 || homogeneous_degree(E) != m * (k + 1))
      throw RelationDegreeError("R3 element must be homogeneous of degree m(k+1) = " + std::to_string(m * (k + 1)));

  RelationSystem sys;
  sys.n = n;
  sys.k = k;
  sys.R0 = std::move(R0);
  sys.R1 = std::move(R1);
  sys.R3 = std::move(R3);
  const NCPoly mho = mho_poly(n);
  auto s = [&](int i, int j) -> const NCPoly& { return sys.R0.at({i, j}); };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      NCPoly ts(n), st(n);
      for (int l = 1; l <= n; ++l) {
        ts += T(i, l, n) * s(j, l);
        st += s(l, i) * T(l, j, n);
      }
      const NCPoly d = i == j ? one(n) : NCPoly(n);
      sys.R4.push_back(ts - d);
      sys.R4.push_back(st - d);
      sys.S4.push_back(ts * mho - d);
      sys.S4.push_back(st * mho - d);
      sys.S0.push_back(mho * T(i, j, n) - T(i, j, n) * mho);
    }
  for (const auto& [E, m] : sys.R3) {
    NCPoly e = E;
    for (int r = 0; r < m; ++r) e = e * mho;
    sys.S3.push_back(e - one(n));
  }
  return sys;
}

std::vector<Relation> RelationSystem::a_relations() const {
  std::vector<Relation> out;
  for (std::size_t r = 0; r < R1.size(); ++r) out.push_back({"R1#" + std::to_string(r), R1[r], {}});
  for (std::size_t r = 0; r < R3.size(); ++r) out.push_back({"R3#" + std::to_string(r), R3[r].first - one(n), {}});
  for (std::size_t r = 0; r < R4.size(); ++r) out.push_back({"R4#" + std::to_string(r), R4[r], {}});
  for (const auto& [ij, s] : R0) out.push_back({pair_label("star", ij.first, ij.second), s, ij});
  return out;
}

std::vector<Relation> RelationSystem::z_relations() const {
  std::vector<Relation> out;
  for (std::size_t r = 0; r < S0.size(); ++r) out.push_back({"S0#" + std::to_string(r), S0[r], {}});
  for (std::size_t r = 0; r < R1.size(); ++r) out.push_back({"R1#" + std::to_string(r), R1[r], {}});
  for (std::size_t r = 0; r < S3.size(); ++r) out.push_back({"S3#" + std::to_string(r), S3[r], {}});
  for (std::size_t r = 0; r < S4.size(); ++r) out.push_back({"S4#" + std::to_string(r), S4[r], {}});
  const NCPoly mho = mho_poly(n);
  for (const auto& [ij, s] : R0) out.push_back({pair_label("star", ij.first, ij.second), mho * s, ij});
  return out;
}

RelationSystem relation_system(const Series& s, Variant base) {
  if (base != Variant::Plain && base != Variant::Special)
    throw InvalidVariant("relation systems are built from the plain or special variant");
  if (s.tag == SeriesTag::A && base == Variant::Plain)
    throw InvalidVariant("series A needs the special variant (no antipode on the plain algebra)");
  const Presentation p = build_presentation(s, base);
  const int N = s.N;
  std::map<std::pair<int, int>, NCPoly> R0;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) R0.emplace(std::make_pair(i, j), p.s.at(j, i));
  std::vector<NCPoly> R1(p.relations.begin(), p.relations.begin() + static_cast<std::ptrdiff_t>(p.frt_count));
  const int k = s.tag == SeriesTag::A ? N - 1 : 1;
  std::vector<std::pair<NCPoly, int>> R3;
  if (base == Variant::Special) {
    const int deg = p.det->degree();
    if (deg % (k + 1) != 0)
      throw RelationDegreeError("determinant degree " + std::to_string(deg) + " is not a multiple of k+1");
    R3.emplace_back(*p.det, deg / (k + 1));
  }
  return build_extension(N, k, std::move(R0), std::move(R1), std::move(R3));
}

// ------------------------------------------------------------------- numeric

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CMatrix evaluate(const NumericRep& rep, const NCPoly& p) {
  CMatrix out = CMatrix::Zero(rep.dim, rep.dim);
  const CMatrix I = CMatrix::Identity(rep.dim, rep.dim);
  for (const auto& [w, c] : p.terms()) {
    if (w.tpow > 0) throw RepError("relations use the mho letter, not t-powers");
    CMatrix m = I;
    for (const auto& l : w.letters) {
      if (is_mho(l)) {
        if (!rep.mho) throw RepError("representation has no image for mho");
        m = m * *rep.mho;
      } else {
        if (l.i > rep.n || l.j > rep.n) throw RepError("generator outside the representation");
        m = m * rep.at(l.i, l.j);
      }
    }
    out += Complex(c.evaluate(rep.qval), 0.0) * m;
  }
  return out;
}

double relation_residual(const NumericRep& rep, const Relation& r) {
  CMatrix m = evaluate(rep, r.poly);
  if (r.star) m = rep.at(r.star->first, r.star->second).adjoint() - m;
  if (rep.truncated) {
    const int lo = rep.interior_lo;
    const int width = rep.interior_hi - lo + 1;
    if (width <= 0) throw RepError("empty interior");
    return operator_norm(m.middleCols(lo, width));
  }
  return operator_norm(m);
}

double relation_residual(const NumericRep& rep, const std::vector<Relation>& rels) {
  double worst = 0;
  for (const auto& r : rels) worst = std::max(worst, relation_residual(rep, r));
  return worst;
}

NumericRep twist(const NumericRep& rep, Complex lambda, int k) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) throw RepError("twist parameter must have modulus 1");
  NumericRep out = rep;
  for (auto& m : out.t) m *= lambda;
  const Complex scalar = std::pow(std::conj(lambda), k + 1);
  out.mho = scalar * CMatrix::Identity(rep.dim, rep.dim);
  return out;
}

Untwisted untwist(const NumericRep& rep, int k, double tol) {
  if (!rep.mho) throw RepError("representation has no image for mho");
  const CMatrix& M = *rep.mho;
  const Complex mu = M.trace() / static_cast<double>(rep.dim);
  if (operator_norm(M - mu * CMatrix::Identity(rep.dim, rep.dim)) > tol)
    throw ReducibleRep("mho image is not scalar");
  double arg = std::arg(std::conj(mu));
  if (arg < 0) arg += 2 * std::numbers::pi;
  const Complex lambda = std::polar(1.0, arg / (k + 1));
  Untwisted u;
  u.lambda = lambda;
  u.rep = rep;
  u.rep.mho.reset();
  for (auto& m : u.rep.t) m *= std::conj(lambda);
  return u;
}

namespace {

// vec(XG − GX) = (Gᵀ⊗I − I⊗G) vec X, column-major.
CMatrix sylvester_block(const CMatrix& G) {
  const auto d = G.rows();
  const CMatrix I = CMatrix::Identity(d, d);
  CMatrix out(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      out.block(a * d, b * d, d, d) = G(b, a) * I;
      if (a == b) out.block(a * d, b * d, d, d) -= G;
    }
  return out;
}

}  // namespace

int commutant_dim(const NumericRep& rep, double tol) {
  if (rep.truncated) throw RepError("commutant is not defined for truncated models");
  std::vector<const CMatrix*> gens;
  for (const auto& m : rep.t) gens.push_back(&m);
  if (rep.mho) gens.push_back(&*rep.mho);
  const Eigen::Index d = rep.dim;
  CMatrix stacked(static_cast<Eigen::Index>(2 * gens.size()) * d * d, d * d);
  Eigen::Index row = 0;
  for (const CMatrix* g : gens) {
    stacked.middleRows(row, d * d) = sylvester_block(*g);
    row += d * d;
    stacked.middleRows(row, d * d) = sylvester_block(g->adjoint());
    row += d * d;
  }
  Eigen::JacobiSVD<CMatrix> svd(stacked);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
  int nullity = static_cast<int>(d * d - sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= tol * scale) ++nullity;
  return nullity;
}

NumericRep direct_sum(const NumericRep& a, const NumericRep& b) {
  if (a.n != b.n || a.truncated || b.truncated || a.mho.has_value() != b.mho.has_value())
    throw RepError("direct sum needs matching, untruncated representations");
  NumericRep out;
  out.n = a.n;
  out.dim = a.dim + b.dim;
  out.qval = a.qval;
  auto blk = [&](const CMatrix& x, const CMatrix& y) {
    CMatrix m = CMatrix::Zero(out.dim, out.dim);
    m.topLeftCorner(a.dim, a.dim) = x;
    m.bottomRightCorner(b.dim, b.dim) = y;
    return m;
  };
  for (std::size_t i = 0; i < a.t.size(); ++i) out.t.push_back(blk(a.t[i], b.t[i]));
  if (a.mho) out.mho = blk(*a.mho, *b.mho);
  return out;
}

std::vector<Complex> torus_lambdas(const Series& s, const std::vector<double>& thetas, int middle_sign) {
  const int N = s.N;
  std::vector<Complex> lam(static_cast<std::size_t>(N));
  if (s.tag == SeriesTag::A) {
    if (static_cast<int>(thetas.size()) != N - 1) throw ConstraintViolation("series A needs N-1 angles");
    double sum = 0;
    for (int i = 0; i < N - 1; ++i) {
      lam[static_cast<std::size_t>(i)] = std::polar(1.0, thetas[static_cast<std::size_t>(i)]);
      sum += thetas[static_cast<std::size_t>(i)];
    }
    lam[static_cast<std::size_t>(N - 1)] = std::polar(1.0, -sum);
    return lam;
  }
  const int n = s.n();
  if (static_cast<int>(thetas.size()) != n) throw ConstraintViolation("expected n angles");
  for (int i = 1; i <= n; ++i) {
    const Complex z = std::polar(1.0, thetas[static_cast<std::size_t>(i - 1)]);
    lam[static_cast<std::size_t>(i - 1)] = z;
    lam[static_cast<std::size_t>(N - i)] = std::conj(z);
  }
  if (s.tag == SeriesTag::B) lam[static_cast<std::size_t>(n)] = middle_sign >= 0 ? 1.0 : -1.0;
  return lam;
}

NumericRep torus_rep(const Series& s, Variant base, const std::vector<Complex>& lambdas, double qval) {
  const int N = s.N;
  constexpr double tol = 1e-12;
  if (static_cast<int>(lambdas.size()) != N) throw ConstraintViolation("expected N diagonal entries");
  for (const auto& l : lambdas)
    if (std::abs(std::abs(l) - 1.0) > tol) throw ConstraintViolation("diagonal entries must have modulus 1");
  if (s.tag != SeriesTag::A) {
    for (int j = 1; j <= N; ++j)
      if (std::abs(lambdas[static_cast<std::size_t>(j - 1)] * lambdas[static_cast<std::size_t>(N - j)] - 1.0) > tol)
        throw ConstraintViolation("constraint λ_{N+1-j} = 1/λ_j violated at j = " + std::to_string(j));
  }
  NumericRep rep;
  rep.n = N;
  rep.dim = 1;
  rep.qval = qval;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      CMatrix m(1, 1);
      m(0, 0) = i == j ? lambdas[static_cast<std::size_t>(i - 1)] : Complex(0);
      rep.t.push_back(m);
    }
  if (base == Variant::Special || s.tag == SeriesTag::A) {
    const NCPoly det = s.tag == SeriesTag::A ? quantum_determinant(s) : exterior_determinant(s);
    const Complex d = evaluate(rep, det)(0, 0);
    if (std::abs(d - 1.0) > 1e-10) throw ConstraintViolation("determinant constraint violated");
  }
  return rep;
}

// ------------------------------------------------------------------ symbolic

namespace {

// Laurent polynomial in z_0 (twist) and z_1..z_n (angles) over RatFunc.
using Exps = std::vector<int>;
using Laurent = std::map<Exps, RatFunc>;

void add(Laurent& a, const Exps& e, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, ins] = a.try_emplace(e, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) a.erase(it);
  }
}

}  // namespace

SymbolicCheck torus_symbolic_check(const Series& s, const RelationSystem& sys, bool z_side, int middle_sign) {
  const int N = s.N;
  const int vars = 1 + (s.tag == SeriesTag::A ? N - 1 : s.n());
  // Diagonal image of t_{i,i} as (sign, exponent vector); λ has exponent 1 in z_0 on the Z side.
  std::vector<Exps> diag(static_cast<std::size_t>(N + 1), Exps(static_cast<std::size_t>(vars), 0));
  std::vector<int> sign(static_cast<std::size_t>(N + 1), 1);
  for (int i = 1; i <= N; ++i) {
    Exps& e = diag[static_cast<std::size_t>(i)];
    if (z_side) e[0] = 1;
    if (s.tag == SeriesTag::A) {
      if (i < N) e[static_cast<std::size_t>(i)] = 1;
      else
        for (int v = 1; v < N; ++v) e[static_cast<std::size_t>(v)] = -1;
    } else {
      const int n = s.n();
      if (i <= n) e[static_cast<std::size_t>(i)] = 1;
      else if (i >= N + 1 - n) e[static_cast<std::size_t>(N + 1 - i)] = -1;
      else sign[static_cast<std::size_t>(i)] = middle_sign >= 0 ? 1 : -1;
    }
  }
  Exps mho_e(static_cast<std::size_t>(vars), 0);
  mho_e[0] = -(sys.k + 1);  // λ̄^{k+1}
  auto eval = [&](const NCPoly& p) {
    Laurent out;
    for (const auto& [w, c] : p.terms()) {
      Exps e(static_cast<std::size_t>(vars), 0);
      int sg = 1;
      bool zero = false;
      for (const auto& l : w.letters) {
        if (is_mho(l)) {
          for (int v = 0; v < vars; ++v) e[static_cast<std::size_t>(v)] += mho_e[static_cast<std::size_t>(v)];
        } else if (l.i != l.j) {
          zero = true;
          break;
        } else {
          for (int v = 0; v < vars; ++v) e[static_cast<std::size_t>(v)] += diag[l.i][static_cast<std::size_t>(v)];
          sg *= sign[l.i];
        }
      }
      if (!zero) add(out, e, c * RatFunc(sg));
    }
    return out;
  };
  SymbolicCheck res;
  for (const auto& r : z_side ? sys.z_relations() : sys.a_relations()) {
    Laurent v = eval(r.poly);
    if (r.star) {
      // conj of a unit monomial inverts it; coefficients are real.
      Laurent lhs;
      const auto [i, j] = *r.star;
      if (i == j) {
        Exps e = diag[static_cast<std::size_t>(i)];
        for (auto& x : e) x = -x;
        add(lhs, e, RatFunc(sign[static_cast<std::size_t>(i)]));
      }
      for (const auto& [e, c] : v) add(lhs, e, -c);
      v = std::move(lhs);
    }
    if (!v.empty()) {
      res.exact = false;
      res.failing.push_back(r.label);
    }
  }
  return res;
}

// -------------------------------------------------------------- shift model

NumericRep shift_rep_usp2(int L, double qval) {
  if (!(qval > 0 && qval < 1)) throw RepError("shift model needs 0 < q < 1");
  if (L < 3) throw RepError("truncation level must be at least 3");
  const int d = L + 1;
  const double mu = qval * qval;
  CMatrix alpha = CMatrix::Zero(d, d);
  CMatrix gamma = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    gamma(k, k) = std::pow(mu, k);
    if (k >= 1) alpha(k - 1, k) = std::sqrt(1.0 - std::pow(mu, 2 * k));
  }
  NumericRep rep;
  rep.n = 2;
  rep.dim = d;
  rep.qval = qval;
  rep.t = {alpha, -qval * qval * gamma.adjoint(), gamma, alpha.adjoint()};
  rep.truncated = true;
  rep.interior_lo = 0;
  rep.interior_hi = L - 2;  // relations have degree ≤ 2
  return rep;
}

std::string rep_json(const NumericRep& rep) {
  using nlohmann::json;
  auto mat = [](const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
      rows.push_back(row);
    }
    return rows;
  };
  json j;
  j["dimension"] = rep.dim;
  j["qval"] = rep.qval;
  json g;
  for (int a = 1; a <= rep.n; ++a)
    for (int b = 1; b <= rep.n; ++b) g["t[" + std::to_string(a) + "," + std::to_string(b) + "]"] = mat(rep.at(a, b));
  if (rep.mho) g["mho"] = mat(*rep.mho);
  j["generators"] = g;
  j["truncated"] = rep.truncated;
  j["interior_range"] = rep.truncated ? json::array({rep.interior_lo, rep.interior_hi}) : json(nullptr);
  return j.dump(2);
}

}  // namespace qgx
