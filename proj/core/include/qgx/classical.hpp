// Classical groups ŨSp(2n), Õ(n,ℝ), S̃O(2n,ℝ): structure matrices, the maps
// Ξ, Υ, ℘, seeded sampling and the bilinear-form characterizations.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qgx::classical {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

class ClassicalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StructureMatrices {
  int n = 0;
  CMatrix J, K, S;           // 2n × 2n
  CMatrix C;                 // n × n cross diagonal of ones
  CMatrix Q_even, Q_odd;     // sizes 2n and 2n+1
  CMatrix sqrtD_plus_even, sqrtD_minus_even;
  CMatrix sqrtD_plus_odd, sqrtD_minus_odd;
};

StructureMatrices structure_matrices(int n);
CMatrix cross_identity(int n);
/// Q_m, √D_{m,±} for any size m (even or odd).
CMatrix Q_matrix(int m);
CMatrix sqrtD(int m, bool plus);
CMatrix J_matrix(int n);  // 2n × 2n
CMatrix K_matrix(int n);
CMatrix S_matrix(int n);

enum class Group { USp, O, SO, USpT, OT, SOT };
Group parse_group(const std::string& s);
std::string group_name(Group g);
/// Matrix size of the group for parameter n: USp/ŨSp/S̃O use 2n, O/Õ/SO use n.
int group_size(Group g, int n);
bool is_tilde(Group g);

struct GroupSample {
  CMatrix matrix;
  Group group = Group::USp;
  int n = 0;
  std::optional<Complex> lambda;  // λ = μ² for tilde samples μ·M₀
};

/// Seed-deterministic sample: USp via exponentials of its Lie algebra, O/SO
/// via orthonormalized Gaussians, tilde groups as μ·M₀ with |μ| = 1.
GroupSample sample(Group g, int n, std::uint64_t seed);
CMatrix haar_unitary(int n, std::uint64_t seed);

/// [A 0; 0 det(A)⁻¹]
CMatrix map_xi(const CMatrix& A, double tol = 1e-10);
/// S M S⁻¹
CMatrix map_upsilon(const CMatrix& M);
/// Q √D_+ M √D_− Qᵗ: carries O(n,ℝ) into the C-form group. This is the
/// inverse of the conjugation √D_− Qᵗ M Q √D_+, provided as map_wp_literal.
CMatrix map_wp(const CMatrix& M);
CMatrix map_wp_literal(const CMatrix& M);

enum class Form { J, K, C };
struct Characterization {
  Complex lambda;
  double residual = 0;
};
/// λ = tr(M F Mᵗ Fᵗ)/N and the residual ‖M F Mᵗ Fᵗ − λI‖.
Characterization characterize(const CMatrix& M, Form f);

double unitarity_residual(const CMatrix& M);

enum class Branch { Positive, Negative };
/// det(M) against λ^{N/2} for an even-size M already in the C picture.
Branch branch_check(const CMatrix& M, Complex lambda, double tol = 1e-8);

struct MembershipCheck {
  Complex lambda;
  double residual = 0;   // form residual in the defining picture
  double unitarity = 0;
  bool ok = false;
};
/// Membership of a sample in its group (Υ/℘ applied where the group is
/// defined through them).
MembershipCheck check_membership(const GroupSample& s, double tol = 1e-10);

struct SweepOptions {
  int trials = 100;
  std::uint64_t seed = 7;
  double tol = 1e-10;
  double det_tol = 1e-8;
  bool branch = false;
  bool closure = false;
};

struct SweepReport {
  std::string group;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double max_residual = 0;
  double max_unitarity = 0;
  double max_lambda_modulus_dev = 0;
  double max_display_residual = 0;   // Υ/℘ displays with λ = 1, ŨSp agreement, (det M)² = λ^{2n}
  int positive_branch = 0;
  int negative_branch = 0;
  double max_closure_residual = 0;
  double max_multiplicativity = 0;
  bool passed = true;
  std::vector<std::string> failures;
};

SweepReport sweep(Group g, int n, const SweepOptions& opts);
std::string sweep_json(const SweepReport& r);

}  // namespace qgx::classical
