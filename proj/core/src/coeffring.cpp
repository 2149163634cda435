#include "qgx/coeffring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

namespace qgx {

namespace {

// Dense polynomial helpers over Q, coefficient of x^k at index k.
using Dense = std::vector<mpq_class>;

void strip(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Dense to_dense(const HalfLaurent& a) {
  Dense d;
  if (a.is_zero()) return d;
  d.assign(static_cast<std::size_t>(a.max_exp() - a.min_exp() + 1), mpq_class(0));
  for (const auto& [e, c] : a.terms()) d[static_cast<std::size_t>(e - a.min_exp())] = c;
  return d;
}

HalfLaurent from_dense(const Dense& d, int shift) {
  std::vector<HalfLaurent::Term> t;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d[k] != 0) t.emplace_back(static_cast<int>(k) + shift, d[k]);
  return HalfLaurent::from_terms(std::move(t));
}

// Remainder of a modulo b (b nonzero, stripped).
void poly_rem(Dense& a, const Dense& b) {
  strip(a);
  const std::size_t db = b.size() - 1;
  const mpq_class& lb = b.back();
  while (a.size() >= b.size()) {
    mpq_class f = a.back() / lb;
    const std::size_t off = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) a[off + k] -= f * b[k];
    a.pop_back();
    strip(a);
  }
}

mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace

// ---------------------------------------------------------------- HalfLaurent

HalfLaurent::HalfLaurent(long c) {
  if (c != 0) terms_.emplace_back(0, mpq_class(c));
}

HalfLaurent::HalfLaurent(const mpq_class& c) {
  if (c != 0) terms_.emplace_back(0, c);
}

HalfLaurent HalfLaurent::monomial(const mpq_class& c, int u_exp) {
  HalfLaurent r;
  if (c != 0) r.terms_.emplace_back(u_exp, c);
  return r;
}

HalfLaurent HalfLaurent::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  HalfLaurent r;
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first)
      r.terms_.back().second += t.second;
    else
      r.terms_.push_back(std::move(t));
  }
  r.trim();
  return r;
}

void HalfLaurent::trim() {
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                              [](const Term& t) { return t.second == 0; }),
               terms_.end());
}

bool HalfLaurent::is_one() const {
  return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

mpq_class HalfLaurent::coeff(int u_exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), u_exp,
                             [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == u_exp) return it->second;
  return 0;
}

HalfLaurent HalfLaurent::shifted(int k) const {
  HalfLaurent r = *this;
  for (auto& t : r.terms_) t.first += k;
  return r;
}

HalfLaurent HalfLaurent::scaled(const mpq_class& c) const {
  if (c == 0) return {};
  HalfLaurent r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      mpq_class s = a->second + b->second;
      if (s != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

HalfLaurent& HalfLaurent::operator-=(const HalfLaurent& o) { return *this += -o; }

HalfLaurent HalfLaurent::operator-() const {
  HalfLaurent r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1) {
    HalfLaurent r = b;
    for (auto& t : r.terms_) {
      t.first += a.terms_[0].first;
      t.second *= a.terms_[0].second;
    }
    return r;
  }
  if (b.terms_.size() == 1) return b * a;
  std::map<int, mpq_class> acc;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
  HalfLaurent r;
  for (auto& [e, c] : acc)
    if (c != 0) r.terms_.emplace_back(e, std::move(c));
  return r;
}

HalfLaurent& HalfLaurent::operator*=(const HalfLaurent& o) { return *this = *this * o; }

HalfLaurent HalfLaurent::divide_exact(const HalfLaurent& a, const HalfLaurent& b) {
  if (b.is_zero()) throw DivisionByZero("HalfLaurent division by zero");
  if (a.is_zero()) return {};
  if (b.is_monomial()) {
    HalfLaurent r = a;
    const mpq_class inv = 1 / b.terms_[0].second;
    for (auto& t : r.terms_) {
      t.first -= b.terms_[0].first;
      t.second *= inv;
    }
    return r;
  }
  Dense num = to_dense(a);
  Dense den = to_dense(b);
  const int shift = a.min_exp() - b.min_exp();
  if (num.size() < den.size()) throw std::domain_error("HalfLaurent: inexact division");
  Dense quot(num.size() - den.size() + 1, mpq_class(0));
  const std::size_t dd = den.size() - 1;
  for (std::size_t k = quot.size(); k-- > 0;) {
    mpq_class f = num[k + dd] / den[dd];
    quot[k] = f;
    if (f != 0)
      for (std::size_t j = 0; j <= dd; ++j) num[k + j] -= f * den[j];
  }
  strip(num);
  if (!num.empty()) throw std::domain_error("HalfLaurent: inexact division");
  return from_dense(quot, shift);
}

HalfLaurent HalfLaurent::gcd(const HalfLaurent& a, const HalfLaurent& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero() || b.is_zero()) {
    const HalfLaurent& x = a.is_zero() ? b : a;
    return from_dense(to_dense(x), 0).scaled(1 / x.leading_coeff());
  }
  if (a.is_monomial() || b.is_monomial()) return HalfLaurent(1);
  Dense x = to_dense(a);
  Dense y = to_dense(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    poly_rem(x, y);
    std::swap(x, y);
  }
  const mpq_class lead = x.back();
  for (auto& c : x) c /= lead;
  return from_dense(x, 0);
}

mpq_class HalfLaurent::rational_content() const {
  if (is_zero()) return 0;
  mpz_class g = 0;
  mpz_class l = 1;
  for (const auto& [e, c] : terms_) {
    g = gcd_z(g, c.get_num());
    l = lcm_z(l, c.get_den());
  }
  mpq_class r(abs(g), l);
  r.canonicalize();
  return r;
}

double HalfLaurent::evaluate(double u) const {
  double s = 0;
  for (const auto& [e, c] : terms_) s += c.get_d() * std::pow(u, e);
  return s;
}

mpq_class HalfLaurent::evaluate(const mpq_class& u) const {
  if (u == 0) throw PoleError("evaluation at u = 0");
  mpq_class s = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class p = 1;
    mpz_class num = u.get_num();
    mpz_class den = u.get_den();
    const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_class nk, dk;
    mpz_pow_ui(nk.get_mpz_t(), num.get_mpz_t(), k);
    mpz_pow_ui(dk.get_mpz_t(), den.get_mpz_t(), k);
    p = e >= 0 ? mpq_class(nk, dk) : mpq_class(dk, nk);
    p.canonicalize();
    s += c * p;
  }
  return s;
}

namespace {

std::string rational_text(const mpq_class& c) { return c.get_str(); }

std::string term_text(int e, const mpq_class& c) {
  std::string s = rational_text(c);
  if (e != 0) s += "*q^(" + std::to_string(e) + "/2)";
  return s;
}

}  // namespace

std::string HalfLaurent::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += term_text(it->first, it->second);
  }
  return s;
}

// ------------------------------------------------------------------- RatFunc

RatFunc::RatFunc(HalfLaurent num) : num_(std::move(num)), den_(1) {}

RatFunc::RatFunc(HalfLaurent num, HalfLaurent den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("RatFunc with zero denominator");
  canonicalize();
}

RatFunc RatFunc::q_minus_qinv() {
  return RatFunc(HalfLaurent::q_power(1) - HalfLaurent::q_power(-1));
}

void RatFunc::canonicalize() {
  if (num_.is_zero()) {
    den_ = HalfLaurent(1);
    return;
  }
  if (den_.is_monomial()) {
    num_ = HalfLaurent::divide_exact(num_, den_);
    den_ = HalfLaurent(1);
    return;
  }
  HalfLaurent g = HalfLaurent::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = HalfLaurent::divide_exact(num_, g);
    den_ = HalfLaurent::divide_exact(den_, g);
  }
  if (den_.is_monomial()) {
    num_ = HalfLaurent::divide_exact(num_, den_);
    den_ = HalfLaurent(1);
    return;
  }
  const int shift = -den_.min_exp();
  mpq_class scale = 1 / den_.rational_content();
  if (den_.leading_coeff() < 0) scale = -scale;
  num_ = num_.shifted(shift).scaled(scale);
  den_ = den_.shifted(shift).scaled(scale);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    canonicalize();
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero RatFunc");
  return RatFunc(den_, num_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

bool RatFunc::is_rational_square(const mpq_class& q0) const {
  if (q0 <= 0) return false;
  return mpz_perfect_square_p(q0.get_num().get_mpz_t()) != 0 &&
         mpz_perfect_square_p(q0.get_den().get_mpz_t()) != 0;
}

mpq_class RatFunc::evaluate_exact(const mpq_class& q0) const {
  if (q0 <= 0) throw std::domain_error("evaluate: q0 must be positive");
  if (!is_rational_square(q0))
    throw std::domain_error("evaluate_exact: q0 is not the square of a rational");
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), q0.get_num().get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), q0.get_den().get_mpz_t());
  mpq_class u(rn, rd);
  u.canonicalize();
  mpq_class d = den_.evaluate(u);
  if (d == 0) throw PoleError("pole at q = " + q0.get_str());
  return num_.evaluate(u) / d;
}

double RatFunc::evaluate(double q0) const {
  if (!(q0 > 0)) throw std::domain_error("evaluate: q0 must be positive");
  const double u = std::sqrt(q0);
  const double d = den_.evaluate(u);
  // Exact zero test first: a denominator can vanish at q0 exactly even if the
  // floating value is only tiny.
  if (d == 0.0 || std::abs(d) < 1e-300) throw PoleError("pole at q = " + std::to_string(q0));
  return num_.evaluate(u) / d;
}

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ------------------------------------------------------------------- parsing

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eof() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  long integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }
  bool at_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  mpq_class rational() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
        std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (pos_ == start) fail("expected rational");
    mpq_class c(std::string(s_.substr(start, pos_ - start)));
    if (c.get_den() == 0) fail("zero denominator");
    c.canonicalize();
    return c;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// q-exponent suffix: q, q^k, q^(e/2), q^(k)
int parse_q_suffix(Cursor& c) {
  c.expect('q');
  if (!c.accept('^')) return 2;
  if (c.accept('(')) {
    long e = c.integer();
    long u;
    if (c.accept('/')) {
      long d = c.integer();
      if (d != 2 && d != 1) c.fail("exponent denominator must be 1 or 2");
      u = d == 2 ? e : 2 * e;
    } else {
      u = 2 * e;
    }
    c.expect(')');
    return static_cast<int>(u);
  }
  return static_cast<int>(2 * c.integer());
}

HalfLaurent parse_sum(Cursor& c);

// A signed term; returns false at a terminator.
HalfLaurent parse_term(Cursor& c) {
  int sign = 1;
  while (true) {
    if (c.accept('-')) sign = -sign;
    else if (c.accept('+')) {
    } else break;
  }
  mpq_class coef = 1;
  bool have = false;
  if (c.at_digit()) {
    coef = c.rational();
    have = true;
  } else if (c.peek() == '(') {
    c.expect('(');
    HalfLaurent inner = parse_sum(c);
    c.expect(')');
    HalfLaurent r = inner.scaled(sign);
    if (c.accept('*')) r = r * parse_term(c);
    return r;
  }
  int e = 0;
  if (c.peek() == 'q') {
    e = parse_q_suffix(c);
  } else if (have && c.accept('*')) {
    if (c.peek() == 'q') e = parse_q_suffix(c);
    else return HalfLaurent::monomial(coef * sign, 0) * parse_term(c);
  } else if (!have) {
    c.fail("expected term");
  }
  return HalfLaurent::monomial(coef * sign, e);
}

HalfLaurent parse_sum(Cursor& c) {
  HalfLaurent acc = parse_term(c);
  while (true) {
    char p = c.peek();
    if (p == '+' || p == '-') acc += parse_term(c);
    else break;
  }
  return acc;
}

}  // namespace

HalfLaurent parse_half_laurent(std::string_view text) {
  Cursor c(text);
  HalfLaurent r = parse_sum(c);
  if (!c.eof()) c.fail("trailing input");
  return r;
}

RatFunc RatFunc::parse(std::string_view text) {
  Cursor c(text);
  HalfLaurent num = parse_sum(c);
  HalfLaurent den(1);
  if (c.accept('/')) {
    if (c.peek() == '(') {
      c.expect('(');
      den = parse_sum(c);
      c.expect(')');
    } else {
      den = parse_term(c);
    }
  }
  if (!c.eof()) c.fail("trailing input");
  if (den.is_zero()) throw DivisionByZero("parsed denominator is zero");
  return RatFunc(num, den);
}

std::ostream& operator<<(std::ostream& os, const HalfLaurent& p) { return os << p.to_string(); }
std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.to_string(); }

}  // namespace qgx
