// Universal extension of a relation system by a central unitary ℧⁻¹, numeric
// representations, twisting π ↦ π_{α,λ} and its inverse, commutants, and the
// concrete models (torus characters, the truncated rank-one shift model).
#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qgx/freealg.hpp"
#include "qgx/frtfamily.hpp"

namespace qgx {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

class RelationDegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RepError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ℧⁻¹ is not a scalar multiple of the identity (the representation is reducible).
class ReducibleRep : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConstraintViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// In relation polynomials the letter V[i,j] stands for t_{i,j} and the
/// reserved letter (0,0) for ℧⁻¹, which is not central in the free algebra.
constexpr Letter kMho{0, 0};
NCPoly mho_poly(int n);

struct Relation {
  std::string label;
  NCPoly poly;
  /// When set the relation reads t_{i,j}^* − poly.
  std::optional<std::pair<int, int>> star;
};

struct RelationSystem {
  int n = 0;
  int k = 1;
  std::map<std::pair<int, int>, NCPoly> R0;  // s_{i,j}, homogeneous of degree k
  std::vector<NCPoly> R1;
  std::vector<std::pair<NCPoly, int>> R3;    // (E, m): E of degree m(k+1), relation E − 1
  std::vector<NCPoly> R4, S0, S3, S4;

  /// R1, R3, R4 and t_{i,j}^* = s_{i,j}.
  std::vector<Relation> a_relations() const;
  /// S0, R1, S3, S4 and t_{i,j}^* = ℧⁻¹ s_{i,j}.
  std::vector<Relation> z_relations() const;
};

RelationSystem build_extension(int n, int k, std::map<std::pair<int, int>, NCPoly> R0, std::vector<NCPoly> R1,
                               std::vector<std::pair<NCPoly, int>> R3);
/// The system of the quantum group: base Plain (O_q, USp_q) or Special
/// (SO_q, SU_q). Here s_{i,j} = S(V[j,i]).
RelationSystem relation_system(const Series& s, Variant base);

std::string relation_to_string(const NCPoly& p);

struct NumericRep {
  int n = 0;     // T is n×n
  int dim = 0;
  double qval = 0;
  std::vector<CMatrix> t;   // index (i-1)*n + (j-1)
  std::optional<CMatrix> mho;
  bool truncated = false;
  int interior_lo = 0;
  int interior_hi = -1;     // inclusive

  const CMatrix& at(int i, int j) const { return t.at(static_cast<std::size_t>((i - 1) * n + (j - 1))); }
  CMatrix& at(int i, int j) { return t.at(static_cast<std::size_t>((i - 1) * n + (j - 1))); }
};

double operator_norm(const CMatrix& m);
CMatrix evaluate(const NumericRep& rep, const NCPoly& p);
/// Residual operator norm of one relation (interior columns when truncated).
double relation_residual(const NumericRep& rep, const Relation& r);
double relation_residual(const NumericRep& rep, const std::vector<Relation>& rels);

/// t ↦ λ·t, ℧⁻¹ ↦ λ̄^{k+1}.
NumericRep twist(const NumericRep& rep, Complex lambda, int k);

struct Untwisted {
  Complex lambda;
  NumericRep rep;
};
/// Recovers (λ, π) with twist(π, λ) = rep: λ is the principal (k+1)-th root
/// of the conjugate of the scalar ℧⁻¹.
Untwisted untwist(const NumericRep& rep, int k, double tol = 1e-10);

/// Dimension of the commutant of the images and their adjoints.
int commutant_dim(const NumericRep& rep, double tol = 1e-9);
NumericRep direct_sum(const NumericRep& a, const NumericRep& b);

/// Diagonal entries λ_1..λ_N for the given free angles (series A: n−1
/// angles, B/C/D: n angles; B uses middle_sign for the middle entry).
std::vector<Complex> torus_lambdas(const Series& s, const std::vector<double>& thetas, int middle_sign = 1);
/// 1-dimensional representation V[i,j] ↦ δ_{ij} λ_i; checks the constraints.
NumericRep torus_rep(const Series& s, Variant base, const std::vector<Complex>& lambdas, double qval = 0.5);

struct SymbolicCheck {
  bool exact = true;
  std::vector<std::string> failing;
};
/// Evaluates every relation on the torus character with formal unit-modulus
/// angles (and a formal twist λ for the Z side); exact over the coefficient field.
SymbolicCheck torus_symbolic_check(const Series& s, const RelationSystem& sys, bool z_side, int middle_sign = 1);

/// (L+1)-dimensional truncation of the weighted-shift model of USp_q(2).
NumericRep shift_rep_usp2(int L, double qval);

std::string rep_json(const NumericRep& rep);

}  // namespace qgx
