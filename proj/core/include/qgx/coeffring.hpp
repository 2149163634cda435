// Exact coefficient arithmetic: Laurent polynomials in u = q^{1/2} over the
// rationals (HalfLaurent) and their field of fractions (RatFunc).
//
// Every scalar that appears in the quantum-group presentations is an element
// of Q(u): powers q^{k/2}, factors like (q - 1/q), and the fractions that
// show up when R-matrices are inverted.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qgx {

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Laurent polynomial sum_e c_e u^e with rational coefficients. Terms are kept
/// sorted by exponent and no stored coefficient is zero.
class HalfLaurent {
 public:
  using Term = std::pair<int, mpq_class>;

  HalfLaurent() = default;
  HalfLaurent(long c);  // NOLINT(google-explicit-constructor)
  HalfLaurent(const mpq_class& c);  // NOLINT(google-explicit-constructor)

  static HalfLaurent monomial(const mpq_class& c, int u_exp);
  /// q^{e} = u^{2e}
  static HalfLaurent q_power(int e) { return monomial(1, 2 * e); }
  static HalfLaurent u_power(int e) { return monomial(1, e); }
  /// Builds from arbitrary (exponent, coefficient) pairs; merges duplicates.
  static HalfLaurent from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }
  int min_exp() const { return terms_.front().first; }
  int max_exp() const { return terms_.back().first; }
  const mpq_class& leading_coeff() const { return terms_.back().second; }
  mpq_class coeff(int u_exp) const;

  HalfLaurent shifted(int k) const;  // multiply by u^k
  HalfLaurent scaled(const mpq_class& c) const;

  HalfLaurent& operator+=(const HalfLaurent& o);
  HalfLaurent& operator-=(const HalfLaurent& o);
  HalfLaurent& operator*=(const HalfLaurent& o);
  friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) { return a += b; }
  friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) { return a -= b; }
  friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b);
  HalfLaurent operator-() const;

  friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const HalfLaurent& a, const HalfLaurent& b) { return !(a == b); }

  /// Exact quotient a / b in the Laurent ring; throws std::domain_error if b
  /// does not divide a.
  static HalfLaurent divide_exact(const HalfLaurent& a, const HalfLaurent& b);
  /// Monic polynomial gcd of the two Laurent polynomials, normalized to have
  /// minimal exponent 0. gcd(0, 0) = 0.
  static HalfLaurent gcd(const HalfLaurent& a, const HalfLaurent& b);
  /// gcd of numerators over lcm of denominators, positive.
  mpq_class rational_content() const;

  double evaluate(double u) const;
  mpq_class evaluate(const mpq_class& u) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Term> terms_;
};

/// Element num/den of Q(u). Canonical form: gcd(num, den) is a unit, den has
/// minimal exponent 0, integer coefficients with content 1 and a positive
/// leading coefficient. Equality is therefore syntactic.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const mpq_class& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(HalfLaurent num);  // NOLINT(google-explicit-constructor)
  RatFunc(HalfLaurent num, HalfLaurent den);

  static RatFunc q_power(int e) { return RatFunc(HalfLaurent::q_power(e)); }
  static RatFunc u_power(int e) { return RatFunc(HalfLaurent::u_power(e)); }
  /// q - 1/q
  static RatFunc q_minus_qinv();

  const HalfLaurent& num() const { return num_; }
  const HalfLaurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;

  RatFunc inverse() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  /// Substitutes u = sqrt(q0). Exact when q0 is the square of a rational.
  mpq_class evaluate_exact(const mpq_class& q0) const;
  double evaluate(double q0) const;
  bool is_rational_square(const mpq_class& q0) const;

  /// Sum of `c*q^(e/2)` terms, parenthesized over a denominator when the
  /// denominator is not 1. parse(to_string(x)) == x.
  std::string to_string() const;
  static RatFunc parse(std::string_view text);

 private:
  void canonicalize();
  HalfLaurent num_;
  HalfLaurent den_;
};

std::ostream& operator<<(std::ostream& os, const HalfLaurent& p);
std::ostream& operator<<(std::ostream& os, const RatFunc& r);

/// Parses a single HalfLaurent (no denominator) in the rendering format.
HalfLaurent parse_half_laurent(std::string_view text);

}  // namespace qgx
