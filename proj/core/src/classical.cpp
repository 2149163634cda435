#include "qgx/classical.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "json.hpp"

namespace qgx::classical {

namespace {

constexpr Complex kI{0.0, 1.0};

double opnorm(const CMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CMatrix block2(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d) {
  CMatrix m(a.rows() + c.rows(), a.cols() + b.cols());
  m << a, b, c, d;
  return m;
}

CMatrix eye(int n) { return CMatrix::Identity(n, n); }
CMatrix zero(int r, int c) { return CMatrix::Zero(r, c); }

Complex random_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  return std::polar(1.0, u(rng));
}

CMatrix gaussian(int r, int c, std::mt19937_64& rng, bool complex) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = complex ? Complex(g(rng), g(rng)) : Complex(g(rng), 0.0);
  return m;
}

// Q from a QR factorization with the phases of diag(R) removed (Haar measure).
CMatrix orthonormalize(const CMatrix& z) {
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix Q = qr.householderQ() * eye(static_cast<int>(z.rows()));
  CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const Complex d = R(i, i);
    if (std::abs(d) > 0) Q.col(i) *= d / std::abs(d);
  }
  return Q;
}

// exp(X) for skew-Hermitian X via the spectral decomposition of −iX.
CMatrix exp_skew(const CMatrix& X) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(-kI * X);
  CMatrix D = CMatrix::Zero(X.rows(), X.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i) D(i, i) = std::exp(kI * es.eigenvalues()(i));
  return es.eigenvectors() * D * es.eigenvectors().adjoint();
}

CMatrix form_matrix(Form f, int N) {
  switch (f) {
    case Form::J: return J_matrix(N / 2);
    case Form::K: return K_matrix(N / 2);
    case Form::C: return cross_identity(N);
  }
  return {};
}

}  // namespace

CMatrix cross_identity(int n) {
  CMatrix c = zero(n, n);
  for (int i = 0; i < n; ++i) c(i, n - 1 - i) = 1.0;
  return c;
}

CMatrix J_matrix(int n) { return block2(zero(n, n), eye(n), -eye(n), zero(n, n)); }
CMatrix K_matrix(int n) {
  const CMatrix C = cross_identity(n);
  return block2(zero(n, n), C, -C, zero(n, n));
}
CMatrix S_matrix(int n) { return block2(eye(n), zero(n, n), zero(n, n), cross_identity(n)); }

CMatrix Q_matrix(int m) {
  if (m < 1) throw ClassicalError("size must be positive");
  const int k = m / 2;
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix Q = zero(m, m);
  const CMatrix C = cross_identity(k);
  Q.topLeftCorner(k, k) = r * eye(k);
  Q.topRightCorner(k, k) = r * eye(k);
  Q.bottomLeftCorner(k, k) = r * C;
  Q.bottomRightCorner(k, k) = -r * C;
  if (m % 2 == 1) Q(k, k) = 1.0;  // keeps Q orthogonal
  return Q;
}

CMatrix sqrtD(int m, bool plus) {
  const int k = m / 2;
  CMatrix D = eye(m);
  for (int i = m - k; i < m; ++i) D(i, i) = plus ? kI : -kI;
  return D;
}

StructureMatrices structure_matrices(int n) {
  if (n < 1) throw ClassicalError("n must be positive");
  StructureMatrices s;
  s.n = n;
  s.J = J_matrix(n);
  s.K = K_matrix(n);
  s.S = S_matrix(n);
  s.C = cross_identity(n);
  s.Q_even = Q_matrix(2 * n);
  s.Q_odd = Q_matrix(2 * n + 1);
  s.sqrtD_plus_even = sqrtD(2 * n, true);
  s.sqrtD_minus_even = sqrtD(2 * n, false);
  s.sqrtD_plus_odd = sqrtD(2 * n + 1, true);
  s.sqrtD_minus_odd = sqrtD(2 * n + 1, false);
  return s;
}

Group parse_group(const std::string& s) {
  if (s == "usp") return Group::USp;
  if (s == "o") return Group::O;
  if (s == "so") return Group::SO;
  if (s == "uspt") return Group::USpT;
  if (s == "ot") return Group::OT;
  if (s == "sot") return Group::SOT;
  throw ClassicalError("unknown group '" + s + "' (usp, o, so, uspt, ot, sot)");
}

std::string group_name(Group g) {
  switch (g) {
    case Group::USp: return "usp";
    case Group::O: return "o";
    case Group::SO: return "so";
    case Group::USpT: return "uspt";
    case Group::OT: return "ot";
    case Group::SOT: return "sot";
  }
  return "?";
}

int group_size(Group g, int n) {
  switch (g) {
    case Group::USp:
    case Group::USpT:
    case Group::SOT: return 2 * n;
    default: return n;
  }
}

bool is_tilde(Group g) { return g == Group::USpT || g == Group::OT || g == Group::SOT; }

CMatrix haar_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return orthonormalize(gaussian(n, n, rng, true));
}

GroupSample sample(Group g, int n, std::uint64_t seed) {
  if (n < 1) throw ClassicalError("n must be positive");
  std::mt19937_64 rng(seed);
  GroupSample s;
  s.group = g;
  s.n = n;
  const int N = group_size(g, n);
  CMatrix M0;
  if (g == Group::USp || g == Group::USpT) {
    // [A B; −B̄ Ā] with A skew-Hermitian and B symmetric spans the Lie algebra.
    CMatrix A = gaussian(n, n, rng, true);
    A = 0.5 * (A - A.adjoint().eval());
    CMatrix B = gaussian(n, n, rng, true);
    B = 0.5 * (B + B.transpose().eval());
    M0 = exp_skew(block2(A, B, -B.conjugate(), A.conjugate()));
  } else {
    M0 = orthonormalize(gaussian(N, N, rng, false)).real().cast<Complex>();
    const bool special = g == Group::SO || g == Group::SOT;
    if (special && M0.determinant().real() < 0) M0.col(0) *= -1.0;
  }
  if (is_tilde(g)) {
    const Complex mu = random_phase(rng);
    s.matrix = mu * M0;
    s.lambda = mu * mu;
  } else {
    s.matrix = M0;
  }
  return s;
}

CMatrix map_xi(const CMatrix& A, double tol) {
  const auto n = A.rows();
  if (A.cols() != n) throw ClassicalError("map_xi needs a square matrix");
  if (unitarity_residual(A) > tol) throw ClassicalError("map_xi needs a unitary matrix");
  CMatrix out = zero(static_cast<int>(n + 1), static_cast<int>(n + 1));
  out.topLeftCorner(n, n) = A;
  out(n, n) = 1.0 / A.determinant();
  return out;
}

CMatrix map_upsilon(const CMatrix& M) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0) throw ClassicalError("map_upsilon needs an even square matrix");
  const CMatrix S = S_matrix(static_cast<int>(M.rows() / 2));
  return S * M * S.inverse();
}

CMatrix map_wp(const CMatrix& M) {
  if (M.rows() != M.cols()) throw ClassicalError("map_wp needs a square matrix");
  const int m = static_cast<int>(M.rows());
  const CMatrix Q = Q_matrix(m);
  return Q * sqrtD(m, true) * M * sqrtD(m, false) * Q.transpose();
}

CMatrix map_wp_literal(const CMatrix& M) {
  if (M.rows() != M.cols()) throw ClassicalError("map_wp_literal needs a square matrix");
  const int m = static_cast<int>(M.rows());
  const CMatrix Q = Q_matrix(m);
  return sqrtD(m, false) * Q.transpose() * M * Q * sqrtD(m, true);
}

Characterization characterize(const CMatrix& M, Form f) {
  const int N = static_cast<int>(M.rows());
  if (f != Form::C && N % 2 != 0) throw ClassicalError("J and K forms need even size");
  const CMatrix F = form_matrix(f, N);
  const CMatrix X = M * F * M.transpose() * F.transpose();
  Characterization c;
  c.lambda = X.trace() / static_cast<double>(N);
  c.residual = opnorm(X - c.lambda * eye(N));
  return c;
}

double unitarity_residual(const CMatrix& M) { return opnorm(M * M.adjoint() - eye(static_cast<int>(M.rows()))); }

Branch branch_check(const CMatrix& M, Complex lambda, double tol) {
  const int N = static_cast<int>(M.rows());
  if (N % 2 != 0) throw ClassicalError("branch check needs even size");
  if (characterize(M, Form::C).residual > tol) throw ClassicalError("matrix is not in the Õ(2n) picture");
  const Complex target = std::pow(lambda, N / 2);
  const Complex d = M.determinant();
  return std::abs(d - target) <= std::abs(d + target) ? Branch::Positive : Branch::Negative;
}

namespace {

// The matrix in the picture where the group is cut out by a form.
CMatrix picture(const GroupSample& s) {
  switch (s.group) {
    case Group::USp:
    case Group::USpT: return s.matrix;
    default: return map_wp(s.matrix);
  }
}

Form picture_form(Group g) { return g == Group::USp || g == Group::USpT ? Form::J : Form::C; }

}  // namespace

MembershipCheck check_membership(const GroupSample& s, double tol) {
  MembershipCheck m;
  const CMatrix P = picture(s);
  const Characterization c = characterize(P, picture_form(s.group));
  m.lambda = c.lambda;
  m.residual = c.residual;
  m.unitarity = unitarity_residual(P);
  const bool lam_ok = is_tilde(s.group) ? std::abs(std::abs(c.lambda) - 1.0) <= tol : std::abs(c.lambda - 1.0) <= tol;
  m.ok = lam_ok && c.residual <= tol && m.unitarity <= tol;
  if (s.group == Group::SO) m.ok = m.ok && std::abs(P.determinant() - 1.0) <= tol;
  return m;
}

SweepReport sweep(Group g, int n, const SweepOptions& o) {
  SweepReport r;
  r.group = group_name(g);
  r.n = n;
  r.trials = o.trials;
  r.seed = o.seed;
  auto fail = [&](const std::string& what) {
    r.passed = false;
    if (r.failures.size() < 20) r.failures.push_back(what);
  };
  const int N = group_size(g, n);
  std::vector<GroupSample> samples;
  for (int t = 0; t < o.trials; ++t) {
    const GroupSample s = sample(g, n, o.seed * 1000003ULL + static_cast<std::uint64_t>(t));
    const MembershipCheck m = check_membership(s, o.tol);
    r.max_residual = std::max(r.max_residual, m.residual);
    r.max_unitarity = std::max(r.max_unitarity, m.unitarity);
    r.max_lambda_modulus_dev = std::max(r.max_lambda_modulus_dev, std::abs(std::abs(m.lambda) - 1.0));
    if (!m.ok) fail("sample " + std::to_string(t) + " fails membership");
    if (s.lambda && std::abs(*s.lambda - m.lambda) > o.tol) fail("sample " + std::to_string(t) + " λ differs from μ²");
    double disp = 0;
    const CMatrix P = picture(s);
    switch (g) {
      case Group::USp: {
        const CMatrix U = map_upsilon(s.matrix);
        const Characterization c = characterize(U, Form::K);
        disp = std::max(c.residual, std::abs(c.lambda - 1.0));
        const CMatrix X = map_xi(U);
        disp = std::max({disp, unitarity_residual(X), std::abs(X.determinant() - 1.0)});
        break;
      }
      case Group::USpT: {
        // Both descriptions: M J Mᵗ = λJ and Υ(M) K Υ(M)ᵗ Kᵗ = λI.
        const Characterization c = characterize(map_upsilon(s.matrix), Form::K);
        disp = std::max(c.residual, std::abs(c.lambda - m.lambda));
        break;
      }
      case Group::O:
      case Group::SO: {
        const CMatrix X = map_xi(P);
        disp = std::max(unitarity_residual(X), std::abs(X.determinant() - 1.0));
        break;
      }
      case Group::OT:
      case Group::SOT:
        if (N % 2 == 0) {
          const Complex d = P.determinant();
          if (std::abs(d * d - std::pow(m.lambda, N)) > o.det_tol)
            fail("sample " + std::to_string(t) + ": (det M)² ≠ λ^{2n}");
        }
        break;
    }
    r.max_display_residual = std::max(r.max_display_residual, disp);
    if (disp > o.tol) fail("sample " + std::to_string(t) + " display residual " + std::to_string(disp));
    if ((o.branch || g == Group::SOT) && (g == Group::OT || g == Group::SOT) && N % 2 == 0) {
      const Branch b = branch_check(P, m.lambda, o.det_tol);
      (b == Branch::Positive ? r.positive_branch : r.negative_branch)++;
      if (g == Group::SOT && b != Branch::Positive) fail("sample " + std::to_string(t) + " is on the negative branch");
    }
    samples.push_back(s);
  }
  if (o.closure) {
    for (int t = 0; t + 1 < static_cast<int>(samples.size()); ++t) {
      const GroupSample& a = samples[static_cast<std::size_t>(t)];
      const GroupSample& b = samples[static_cast<std::size_t>(t + 1)];
      GroupSample prod = a;
      prod.matrix = a.matrix * b.matrix;
      GroupSample inv = a;
      inv.matrix = a.matrix.inverse();
      const MembershipCheck ma = check_membership(a, o.tol);
      const MembershipCheck mb = check_membership(b, o.tol);
      const MembershipCheck mp = check_membership(prod, o.tol);
      const MembershipCheck mi = check_membership(inv, o.tol);
      r.max_closure_residual = std::max({r.max_closure_residual, mp.residual, mi.residual});
      const double mult = std::max(std::abs(mp.lambda - ma.lambda * mb.lambda), std::abs(mi.lambda * ma.lambda - 1.0));
      r.max_multiplicativity = std::max(r.max_multiplicativity, mult);
      if (!mp.ok || !mi.ok) fail("closure fails at pair " + std::to_string(t));
      if (mult > o.det_tol) fail("λ not multiplicative at pair " + std::to_string(t));
    }
    GroupSample id;
    id.group = g;
    id.n = n;
    id.matrix = eye(N);
    const MembershipCheck mid = check_membership(id, o.tol);
    if (!mid.ok || std::abs(mid.lambda - 1.0) > o.tol) fail("identity is not in the group with λ = 1");
  }
  return r;
}

std::string sweep_json(const SweepReport& r) {
  nlohmann::json j = {{"kind", "classical"},
                      {"group", r.group},
                      {"n", r.n},
                      {"trials", r.trials},
                      {"seed", r.seed},
                      {"max_residual", r.max_residual},
                      {"max_unitarity", r.max_unitarity},
                      {"max_lambda_modulus_dev", r.max_lambda_modulus_dev},
                      {"max_display_residual", r.max_display_residual},
                      {"positive_branch", r.positive_branch},
                      {"negative_branch", r.negative_branch},
                      {"max_closure_residual", r.max_closure_residual},
                      {"max_multiplicativity", r.max_multiplicativity},
                      {"passed", r.passed},
                      {"failures", r.failures}};
  return j.dump(2);
}

}  // namespace qgx::classical
