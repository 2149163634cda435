#include "qgx/freealg.hpp"

#include <algorithm>
#include <cctype>

namespace qgx {

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters.size() <=> b.letters.size(); c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(),
                                                      b.letters.begin(), b.letters.end());
      c != 0)
    return c;
  return a.tpow <=> b.tpow;
}

Word operator*(const Word& a, const Word& b) {
  Word w;
  w.letters.reserve(a.letters.size() + b.letters.size());
  w.letters.insert(w.letters.end(), a.letters.begin(), a.letters.end());
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  w.tpow = a.tpow + b.tpow;
  return w;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (const auto& l : w.letters) {
    if (!s.empty()) s += ' ';
    s += "V[" + std::to_string(l.i) + "," + std::to_string(l.j) + "]";
  }
  if (w.tpow > 0) {
    if (!s.empty()) s += " * ";
    s += "t^" + std::to_string(w.tpow);
  }
  return s.empty() ? "1" : s;
}

// --------------------------------------------------------------------- NCPoly

namespace {

int merge_alphabet(int a, int b) {
  if (a != 0 && b != 0 && a != b)
    throw AlphabetMismatch("alphabet sizes differ: " + std::to_string(a) + " vs " + std::to_string(b));
  return a != 0 ? a : b;
}

}  // namespace

NCPoly NCPoly::constant(const RatFunc& c, int alphabet) {
  NCPoly p(alphabet);
  p.add_term(Word{}, c);
  return p;
}

NCPoly NCPoly::gen(int i, int j, int alphabet) {
  if (i < 1 || j < 1 || i > 15 || j > 15 || (alphabet != 0 && (i > alphabet || j > alphabet)))
    throw std::out_of_range("generator index out of range");
  NCPoly p(alphabet);
  Word w;
  w.letters.push_back(Letter{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
  p.add_term(w, RatFunc(1));
  return p;
}

NCPoly NCPoly::t(int power, int alphabet) {
  NCPoly p(alphabet);
  Word w;
  w.tpow = power;
  p.add_term(w, RatFunc(1));
  return p;
}

NCPoly NCPoly::monomial(const Word& w, const RatFunc& c, int alphabet) {
  NCPoly p(alphabet);
  p.add_term(w, c);
  return p;
}

int NCPoly::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, w.degree());
  return d;
}

int NCPoly::max_tpow() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.tpow);
  return d;
}

RatFunc NCPoly::constant_term() const { return coeff(Word{}); }

RatFunc NCPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? RatFunc() : it->second;
}

void NCPoly::add_term(const Word& w, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  alphabet_ = merge_alphabet(alphabet_, o.alphabet_);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  alphabet_ = merge_alphabet(alphabet_, o.alphabet_);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(const RatFunc& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

NCPoly NCPoly::operator-() const {
  NCPoly r = *this;
  for (auto& [w, v] : r.terms_) v = -v;
  return r;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly r(merge_alphabet(a.alphabet_, b.alphabet_));
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) r.add_term(wa * wb, ca * cb);
  return r;
}

NCPoly nc_mul(const NCPoly& a, const NCPoly& b) { return a * b; }

NCPoly nc_pow(const NCPoly& a, int k) {
  NCPoly r = NCPoly::constant(RatFunc(1), a.alphabet());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

NCPoly commutator(const NCPoly& a, const NCPoly& b) { return a * b - b * a; }

std::string NCPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")";
    std::string ws;
    for (const auto& l : w.letters) {
      if (!ws.empty()) ws += ' ';
      ws += "V[" + std::to_string(l.i) + "," + std::to_string(l.j) + "]";
    }
    if (!ws.empty()) s += " * " + ws;
    if (w.tpow > 0) s += " * t^" + std::to_string(w.tpow);
  }
  return s;
}

namespace {

class PolyCursor {
 public:
  explicit PolyCursor(std::string_view s) : s_(s) {}
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eof() { return peek() == '\0'; }
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
  int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }
  // Balanced parenthesized span, returned without the outer parentheses.
  std::string_view group() {
    expect('(');
    std::size_t start = pos_;
    int depth = 1;
    while (pos_ < s_.size() && depth > 0) {
      if (s_[pos_] == '(') ++depth;
      if (s_[pos_] == ')') --depth;
      ++pos_;
    }
    if (depth != 0) fail("unbalanced parentheses");
    return s_.substr(start, pos_ - start - 1);
  }
  // Bare numeric coefficient up to the next '*' or '+' at depth 0.
  std::string_view bare_coefficient() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '*' && s_[pos_] != '+') ++pos_;
    return s_.substr(start, pos_ - start);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("NCPoly: " + what + " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

NCPoly NCPoly::parse(std::string_view text, int alphabet) {
  PolyCursor c(text);
  NCPoly out(alphabet);
  if (c.peek() == '0') {
    PolyCursor probe(text);
    probe.integer();
    if (probe.eof()) return out;
  }
  do {
    RatFunc coef(1);
    bool need_sep = false;
    bool negate = false;
    while (c.peek() == '-') {
      c.accept('-');
      negate = !negate;
    }
    if (c.peek() == '(') {
      coef = RatFunc::parse(c.group());
      need_sep = true;
    } else if (c.peek() != 'V' && c.peek() != 't') {
      coef = RatFunc::parse(c.bare_coefficient());
      need_sep = true;
    }
    if (negate) coef = -coef;
    Word w;
    bool more = true;
    while (more) {
      if (need_sep) {
        if (!c.accept('*')) break;
      }
      need_sep = false;
      char p = c.peek();
      if (p == 'V') {
        while (c.peek() == 'V') {
          c.accept('V');
          c.expect('[');
          int i = c.integer();
          c.expect(',');
          int j = c.integer();
          c.expect(']');
          if (i < 1 || j < 1 || i > 15 || j > 15 || (alphabet != 0 && (i > alphabet || j > alphabet)))
            c.fail("generator index out of range");
          w.letters.push_back(Letter{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
        }
        need_sep = true;
      } else if (p == 't') {
        c.accept('t');
        int m = 1;
        if (c.accept('^')) m = c.integer();
        w.tpow += m;
        need_sep = true;
      } else {
        more = false;
      }
    }
    out.add_term(w, coef);
  } while (c.accept('+'));
  if (!c.eof()) c.fail("trailing input");
  return out;
}

// ----------------------------------------------------------------- TensorPoly

TensorPoly TensorPoly::pure(const NCPoly& a, const NCPoly& b) {
  TensorPoly r;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) r.add_term(wa, wb, ca * cb);
  return r;
}

void TensorPoly::add_term(const Word& a, const Word& b, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

TensorPoly operator*(const TensorPoly& a, const TensorPoly& b) {
  TensorPoly r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      r.add_term(ka.first * kb.first, ka.second * kb.second, ca * cb);
  return r;
}

std::string TensorPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ") " + word_to_string(k.first) + " (x) " + word_to_string(k.second);
  }
  return s;
}

// ------------------------------------------------------------------- NCMatrix

NCMatrix NCMatrix::generic(int N) {
  NCMatrix m(N, N);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) m.at(i, j) = NCPoly::gen(i, j, N);
  return m;
}

NCMatrix NCMatrix::identity(int N) {
  NCMatrix m(N, N);
  for (int i = 1; i <= N; ++i) m.at(i, i) = NCPoly::constant(RatFunc(1), N);
  return m;
}

NCMatrix operator*(const NCMatrix& a, const NCMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("NCMatrix shape mismatch");
  NCMatrix r(a.rows_, b.cols_);
  for (int i = 1; i <= a.rows_; ++i)
    for (int j = 1; j <= b.cols_; ++j) {
      NCPoly acc;
      for (int k = 1; k <= a.cols_; ++k) acc += a.at(i, k) * b.at(k, j);
      r.at(i, j) = std::move(acc);
    }
  return r;
}

NCMatrix operator+(const NCMatrix& a, const NCMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("NCMatrix shape mismatch");
  NCMatrix r = a;
  for (std::size_t k = 0; k < r.cells_.size(); ++k) r.cells_[k] += b.cells_[k];
  return r;
}

NCMatrix operator-(const NCMatrix& a, const NCMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("NCMatrix shape mismatch");
  NCMatrix r = a;
  for (std::size_t k = 0; k < r.cells_.size(); ++k) r.cells_[k] -= b.cells_[k];
  return r;
}

// ---------------------------------------------------------------- Hopf maps

GeneratorImages GeneratorImages::from_matrix(const NCMatrix& m, std::optional<NCPoly> t_image) {
  GeneratorImages g(m.rows());
  for (int i = 1; i <= m.rows(); ++i)
    for (int j = 1; j <= m.cols(); ++j) g.set(i, j, m.at(i, j));
  g.t = std::move(t_image);
  return g;
}

const NCPoly& GeneratorImages::get(int i, int j) const {
  if (i < 1 || j < 1 || i > N || j > N)
    throw MissingImage("no image for V[" + std::to_string(i) + "," + std::to_string(j) + "]");
  const auto& slot = v[static_cast<std::size_t>((i - 1) * N + (j - 1))];
  if (!slot) throw MissingImage("no image for V[" + std::to_string(i) + "," + std::to_string(j) + "]");
  return *slot;
}

const NCPoly& GeneratorImages::get_t() const {
  if (!t) throw MissingImage("no image for t");
  return *t;
}

TensorPoly coproduct(const NCPoly& p, int N) {
  TensorPoly out;
  for (const auto& [w, c] : p.terms()) {
    std::map<std::pair<Word, Word>, RatFunc> acc;
    Word tl;
    tl.tpow = w.tpow;
    acc.emplace(std::make_pair(tl, tl), c);
    for (const auto& l : w.letters) {
      std::map<std::pair<Word, Word>, RatFunc> next;
      for (const auto& [k, v] : acc)
        for (int m = 1; m <= N; ++m) {
          auto key = k;
          key.first.letters.push_back(Letter{l.i, static_cast<std::uint8_t>(m)});
          key.second.letters.push_back(Letter{static_cast<std::uint8_t>(m), l.j});
          next.emplace(std::move(key), v);
        }
      acc = std::move(next);
    }
    for (const auto& [k, v] : acc) out.add_term(k.first, k.second, v);
  }
  return out;
}

RatFunc counit(const NCPoly& p) {
  RatFunc s;
  for (const auto& [w, c] : p.terms()) {
    bool diag = std::all_of(w.letters.begin(), w.letters.end(),
                            [](const Letter& l) { return l.i == l.j; });
    if (diag) s += c;
  }
  return s;
}

namespace {

// Alphabet of the codomain: taken from the images, which may differ from the
// source size (morphisms between sizes).
int image_alphabet(const GeneratorImages& images) {
  for (const auto& v : images.v)
    if (v && v->alphabet() != 0) return v->alphabet();
  if (images.t && images.t->alphabet() != 0) return images.t->alphabet();
  return images.N;
}

NCPoly apply_images(const GeneratorImages& images, const NCPoly& p, bool anti) {
  const int M = image_alphabet(images);
  NCPoly out(M);
  for (const auto& [w, c] : p.terms()) {
    NCPoly r = NCPoly::constant(c, M);
    if (w.tpow > 0) r = r * nc_pow(images.get_t(), w.tpow);
    if (anti) {
      for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        r = r * images.get(it->i, it->j);
        if (r.is_zero()) break;
      }
    } else {
      for (const auto& l : w.letters) {
        r = r * images.get(l.i, l.j);
        if (r.is_zero()) break;
      }
    }
    out += r;
  }
  return out;
}

}  // namespace

NCPoly hom_apply(const GeneratorImages& images, const NCPoly& p) {
  return apply_images(images, p, false);
}

NCPoly anti_hom_apply(const GeneratorImages& images, const NCPoly& p) {
  return apply_images(images, p, true);
}

NCPoly star_apply(const GeneratorImages& star_images, const NCPoly& p) {
  return apply_images(star_images, p, true);
}

NCPoly counit_left(const TensorPoly& tp) {
  NCPoly out;
  for (const auto& [k, c] : tp.terms())
    out += NCPoly::monomial(k.second, c * counit(NCPoly::monomial(k.first, RatFunc(1))));
  return out;
}

NCPoly counit_right(const TensorPoly& tp) {
  NCPoly out;
  for (const auto& [k, c] : tp.terms())
    out += NCPoly::monomial(k.first, c * counit(NCPoly::monomial(k.second, RatFunc(1))));
  return out;
}

}  // namespace qgx
