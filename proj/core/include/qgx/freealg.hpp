// Free noncommutative algebra on matrix-entry generators V[i,j] with one
// adjoined central generator t, plus the bialgebra maps on it.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgx/coeffring.hpp"

namespace qgx {

class AlphabetMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingImage : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Letter {
  std::uint8_t i = 1;
  std::uint8_t j = 1;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Monomial: a sequence of V-letters times t^tpow. Ordered by length, then
/// lexicographically on letters, then by tpow.
struct Word {
  std::vector<Letter> letters;
  int tpow = 0;

  std::size_t length() const { return letters.size(); }
  int degree() const { return static_cast<int>(letters.size()) + tpow; }
  bool empty() const { return letters.empty() && tpow == 0; }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
};

Word operator*(const Word& a, const Word& b);

class NCPoly {
 public:
  using Terms = std::map<Word, RatFunc>;

  NCPoly() = default;
  explicit NCPoly(int alphabet) : alphabet_(alphabet) {}
  /// Scalar constant.
  static NCPoly constant(const RatFunc& c, int alphabet = 0);
  static NCPoly gen(int i, int j, int alphabet = 0);
  static NCPoly t(int power = 1, int alphabet = 0);
  static NCPoly monomial(const Word& w, const RatFunc& c, int alphabet = 0);

  const Terms& terms() const { return terms_; }
  int alphabet() const { return alphabet_; }
  void set_alphabet(int n) { alphabet_ = n; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Highest total degree of a term (letters plus t-power); -1 for zero.
  int degree() const;
  int max_tpow() const;
  /// Coefficient of the empty word.
  RatFunc constant_term() const;
  RatFunc coeff(const Word& w) const;

  void add_term(const Word& w, const RatFunc& c);
  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(const RatFunc& c);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const RatFunc& c) { return a *= c; }
  friend NCPoly operator*(const RatFunc& c, NCPoly a) { return a *= c; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  NCPoly operator-() const;

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

  /// `(c) * V[i,j] V[k,l] * t^m` terms joined by ` + `; "0" for zero.
  std::string to_string() const;
  static NCPoly parse(std::string_view text, int alphabet = 0);

 private:
  int alphabet_ = 0;  // 0: not pinned (constants)
  Terms terms_;
};

/// Product in the free algebra (t commutes with everything).
NCPoly nc_mul(const NCPoly& a, const NCPoly& b);
NCPoly nc_pow(const NCPoly& a, int k);
NCPoly commutator(const NCPoly& a, const NCPoly& b);

class TensorPoly {
 public:
  using Key = std::pair<Word, Word>;
  using Terms = std::map<Key, RatFunc>;

  TensorPoly() = default;
  static TensorPoly pure(const NCPoly& a, const NCPoly& b);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  void add_term(const Word& a, const Word& b, const RatFunc& c);
  TensorPoly& operator+=(const TensorPoly& o);
  TensorPoly& operator-=(const TensorPoly& o);
  friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
  friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
  /// (a⊗b)(c⊗d) = ac⊗bd
  friend TensorPoly operator*(const TensorPoly& a, const TensorPoly& b);
  friend bool operator==(const TensorPoly& a, const TensorPoly& b) { return a.terms_ == b.terms_; }
  std::string to_string() const;

 private:
  Terms terms_;
};

class NCMatrix {
 public:
  NCMatrix() = default;
  NCMatrix(int rows, int cols) : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows * cols)) {}
  /// The generic matrix ((V[i,j])) of size N.
  static NCMatrix generic(int N);
  static NCMatrix identity(int N);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  /// 1-based access, matching the V[i,j] labels.
  NCPoly& at(int i, int j) { return cells_.at(index(i, j)); }
  const NCPoly& at(int i, int j) const { return cells_.at(index(i, j)); }

  friend NCMatrix operator*(const NCMatrix& a, const NCMatrix& b);
  friend NCMatrix operator+(const NCMatrix& a, const NCMatrix& b);
  friend NCMatrix operator-(const NCMatrix& a, const NCMatrix& b);
  friend bool operator==(const NCMatrix& a, const NCMatrix& b) = default;

 private:
  std::size_t index(int i, int j) const {
    if (i < 1 || j < 1 || i > rows_ || j > cols_) throw std::out_of_range("NCMatrix index");
    return static_cast<std::size_t>((i - 1) * cols_ + (j - 1));
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<NCPoly> cells_;
};

/// Images of the generators under a (anti-)homomorphism. Missing V-images
/// are signalled by an empty optional; `t` may be absent when unused.
struct GeneratorImages {
  int N = 0;
  std::vector<std::optional<NCPoly>> v;  // index (i-1)*N + (j-1)
  std::optional<NCPoly> t;

  GeneratorImages() = default;
  explicit GeneratorImages(int n) : N(n), v(static_cast<std::size_t>(n * n)) {}
  static GeneratorImages from_matrix(const NCMatrix& m, std::optional<NCPoly> t_image);

  void set(int i, int j, NCPoly p) { v.at(static_cast<std::size_t>((i - 1) * N + (j - 1))) = std::move(p); }
  const NCPoly& get(int i, int j) const;
  const NCPoly& get_t() const;
};

/// Coproduct: Δ(V[i,j]) = Σ_k V[i,k]⊗V[k,j], Δ(t) = t⊗t.
TensorPoly coproduct(const NCPoly& p, int N);
/// Counit: ε(V[i,j]) = δ_ij, ε(t) = 1.
RatFunc counit(const NCPoly& p);
/// Multiplicative extension of the images.
NCPoly hom_apply(const GeneratorImages& images, const NCPoly& p);
/// Anti-multiplicative, linear extension: S(t^m l_1⋯l_L) = S(t)^m S(l_L)⋯S(l_1).
NCPoly anti_hom_apply(const GeneratorImages& images, const NCPoly& p);
/// Star: anti-multiplicative and conjugate-linear. Conjugation is trivial on
/// the coefficient field since q is a positive real, so this coincides with
/// anti_hom_apply on the star table.
NCPoly star_apply(const GeneratorImages& star_images, const NCPoly& p);

/// Apply id⊗ε or ε⊗id to a tensor.
NCPoly counit_left(const TensorPoly& tp);
NCPoly counit_right(const TensorPoly& tp);

std::string word_to_string(const Word& w);

}  // namespace qgx
