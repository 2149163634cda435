// R-matrices of the four classical series, their braid form R̂ = flip∘R,
// the ρ-vectors and the 𝒦 tensor.
//
// Convention: R acts by e_i⊗e_j ↦ Σ R[(k,l),(i,j)] e_k⊗e_l, so an entry is
// addressed by a row pair (k,l) and a column pair (i,j). The elementary
// tensor E_{a,b}⊗E_{c,d} sits at row (a,c), column (b,d).
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgx/coeffring.hpp"

namespace qgx {

class InvalidSeries : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class SeriesTag { A, B, C, D };

struct Series {
  SeriesTag tag = SeriesTag::A;
  int N = 2;

  /// Validates the parity rule (B odd, C/D even, A any N ≥ 2).
  static Series make(SeriesTag tag, int N);
  static Series parse(const std::string& letter, int N);
  /// Rank parameter n: N for A, N/2 for C/D, (N-1)/2 for B.
  int n() const;
  char letter() const;
  std::string name() const;  // e.g. "C4"
  friend bool operator==(const Series&, const Series&) = default;
};

/// ρ_1..ρ_N stored doubled (so half-integers become integers). Equal to the
/// u-exponent of q^{ρ_j}.
std::vector<int> rho_doubled(const Series& s);

using PairIndex = std::pair<int, int>;  // 1-based (a,b)

class RTensor {
 public:
  using Key = std::array<std::uint8_t, 4>;  // row k,l ; col i,j
  using Entries = std::map<Key, RatFunc>;

  RTensor() = default;
  explicit RTensor(int N) : N_(N) {}
  static RTensor identity(int N);
  static RTensor flip(int N);

  int N() const { return N_; }
  const Entries& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  RatFunc get(int k, int l, int i, int j) const;
  void set(int k, int l, int i, int j, const RatFunc& v);
  void add(int k, int l, int i, int j, const RatFunc& v);

  friend RTensor operator*(const RTensor& a, const RTensor& b);
  friend RTensor operator+(const RTensor& a, const RTensor& b);
  friend RTensor operator-(const RTensor& a, const RTensor& b);
  friend RTensor operator*(const RatFunc& c, const RTensor& a);
  friend bool operator==(const RTensor& a, const RTensor& b) {
    return a.N_ == b.N_ && a.entries_ == b.entries_;
  }

  /// Row pair -> list of (column pair, value) and the transpose view.
  std::map<PairIndex, std::vector<std::pair<PairIndex, RatFunc>>> by_row() const;
  std::map<PairIndex, std::vector<std::pair<PairIndex, RatFunc>>> by_col() const;

  /// One line `k l i j <coeff>` per nonzero entry, in key order.
  std::string dump() const;
  static RTensor parse_dump(const std::string& text, int N);

 private:
  int N_ = 0;
  Entries entries_;
};

RTensor build_R(const Series& s);
/// Entry (k,l),(i,j) of R̂ equals entry (l,k),(i,j) of R.
RTensor rhat(const RTensor& R);
/// Exact inverse by sparse Gauss-Jordan over the fraction field.
RTensor inverse(const RTensor& T);
/// (R̂⊗I)(I⊗R̂)(R̂⊗I) = (I⊗R̂)(R̂⊗I)(I⊗R̂), exactly.
bool braid_check(const RTensor& Rhat);

RTensor ktensor_explicit(const Series& s);
/// 𝒦 = I − (q − 1/q)⁻¹ (R̂ − R̂⁻¹)
RTensor ktensor_from_rhat(const RTensor& Rhat);

struct KFit {
  bool in_span = false;
  bool unique = false;  // false when I, R̂, R̂² are dependent
  RatFunc a, b, c;      // 𝒦 = aR̂² + bR̂ + cI
  RatFunc displayed_prefactor;
  bool matches_displayed = false;
};

/// Solves 𝒦 = aR̂² + bR̂ + cI exactly and compares with the displayed
/// prefactor pattern (a = p, b = −p(q − 1/q), c = −p). A dependent span
/// yields one particular solution and the pattern is tested directly.
KFit k_polynomial_fit(const Series& s, const RTensor& Rhat, const RTensor& K);
/// The displayed prefactor p for series B/C/D.
RatFunc displayed_k_prefactor(const Series& s);

}  // namespace qgx
