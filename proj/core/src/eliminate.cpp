#include "qgx/eliminate.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <unordered_set>

namespace qgx {

// --------------------------------------------------------------- packed words

namespace pword {

namespace {
constexpr int kLetterBits = 8;
constexpr PWord kLetterMask = (static_cast<PWord>(1) << 112) - 1;
}  // namespace

PWord pack(const Word& w) {
  if (w.letters.size() > static_cast<std::size_t>(kMaxLetters))
    throw DegreeBoundError("word longer than " + std::to_string(kMaxLetters) + " letters");
  if (w.tpow > 255 || w.degree() > 255) throw DegreeBoundError("t-power too large");
  PWord p = static_cast<PWord>(w.degree()) << 120;
  p |= static_cast<PWord>(w.tpow) << 112;
  int shift = 112 - kLetterBits;
  for (const auto& l : w.letters) {
    p |= static_cast<PWord>((l.i << 4) | l.j) << shift;
    shift -= kLetterBits;
  }
  return p;
}

Word unpack(PWord p) {
  Word w;
  w.tpow = tpow(p);
  const int len = length(p);
  int shift = 112 - kLetterBits;
  for (int k = 0; k < len; ++k) {
    auto byte = static_cast<unsigned>((p >> shift) & 0xff);
    w.letters.push_back(Letter{static_cast<std::uint8_t>(byte >> 4), static_cast<std::uint8_t>(byte & 0xf)});
    shift -= kLetterBits;
  }
  return w;
}

PWord concat(PWord a, PWord b) {
  const int la = length(a);
  const int deg = degree(a) + degree(b);
  const int tp = tpow(a) + tpow(b);
  if (la + length(b) > kMaxLetters) throw DegreeBoundError("concatenated word too long");
  PWord letters = (a & kLetterMask) | ((b & kLetterMask) >> (kLetterBits * la));
  return (static_cast<PWord>(deg) << 120) | (static_cast<PWord>(tp) << 112) | letters;
}

PWord with_tpow(PWord p, int m) {
  const int len = length(p);
  return (static_cast<PWord>(len + m) << 120) | (static_cast<PWord>(m) << 112) | (p & kLetterMask);
}

}  // namespace pword

// -------------------------------------------------------------------- Grading

Grading Grading::trivial(int N) {
  Grading g;
  g.N_ = N;
  return g;
}

Grading Grading::for_series(const Series& s) {
  Grading g;
  g.N_ = s.N;
  const int N = s.N;
  if (s.tag == SeriesTag::A) {
    const int r = N - 1;
    for (int i = 1; i <= N; ++i) {
      std::vector<int> w(static_cast<std::size_t>(r), 0);
      if (i < N) w[static_cast<std::size_t>(i - 1)] = 1;
      else std::fill(w.begin(), w.end(), -1);
      g.index_weights_.push_back(std::move(w));
    }
  } else {
    const int n = s.n();
    for (int i = 1; i <= N; ++i) {
      std::vector<int> w(static_cast<std::size_t>(n), 0);
      if (i <= n) w[static_cast<std::size_t>(i - 1)] = 1;
      else if (i >= N + 1 - n) w[static_cast<std::size_t>(N - i)] = -1;
      g.index_weights_.push_back(std::move(w));
    }
  }
  return g;
}

std::vector<int> Grading::letter_weight(int i, int j) const {
  if (index_weights_.empty()) return {};
  std::vector<int> w = index_weights_.at(static_cast<std::size_t>(i - 1));
  const auto& b = index_weights_.at(static_cast<std::size_t>(j - 1));
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

std::vector<int> Grading::word_weight(const Word& w) const {
  std::vector<int> acc(static_cast<std::size_t>(dim()), 0);
  for (const auto& l : w.letters) {
    auto lw = letter_weight(l.i, l.j);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += lw[k];
  }
  return acc;
}

std::vector<int> Grading::pword_weight(PWord p) const { return word_weight(pword::unpack(p)); }

std::optional<std::vector<int>> Grading::poly_weight(const NCPoly& p) const {
  std::optional<std::vector<int>> w;
  for (const auto& [word, c] : p.terms()) {
    auto ww = word_weight(word);
    if (!w) w = ww;
    else if (*w != ww) return std::nullopt;
  }
  if (!w) w = std::vector<int>(static_cast<std::size_t>(dim()), 0);
  return w;
}

// ---------------------------------------------------------------- the kernel

namespace {

using Row = std::vector<std::pair<PWord, HalfLaurent>>;  // strictly descending words
constexpr int kMaxDims = 15;
using WKey = std::array<std::int8_t, kMaxDims + 1>;  // last slot: degree (or -1)

struct WKeyHash {
  std::size_t operator()(const WKey& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto c : k) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
    return h;
  }
};

WKey add_keys(const WKey& a, const WKey& b) {
  WKey r{};
  for (int k = 0; k < kMaxDims; ++k) r[k] = static_cast<std::int8_t>(a[k] + b[k]);
  r[kMaxDims] = -1;
  return r;
}

WKey sub_keys(const WKey& a, const WKey& b) {
  WKey r{};
  for (int k = 0; k < kMaxDims; ++k) r[k] = static_cast<std::int8_t>(a[k] - b[k]);
  r[kMaxDims] = -1;
  return r;
}

bool is_unit(const HalfLaurent& c) { return c.is_monomial(); }

HalfLaurent unit_inverse(const HalfLaurent& c) {
  const auto& t = c.terms().front();
  return HalfLaurent::monomial(1 / t.second, -t.first);
}

// r ← a·r − b·P  (a may be 1).
void axpy(Row& r, const HalfLaurent& a, const HalfLaurent& b, const Row& P) {
  Row out;
  out.reserve(r.size() + P.size());
  const bool a_one = a.is_one();
  auto x = r.begin();
  auto y = P.begin();
  while (x != r.end() || y != P.end()) {
    if (y == P.end() || (x != r.end() && x->first > y->first)) {
      if (a_one) out.push_back(std::move(*x));
      else out.emplace_back(x->first, a * x->second);
      ++x;
    } else if (x == r.end() || y->first > x->first) {
      out.emplace_back(y->first, -(b * y->second));
      ++y;
    } else {
      HalfLaurent v = a_one ? std::move(x->second) : a * x->second;
      v -= b * y->second;
      if (!v.is_zero()) out.emplace_back(x->first, std::move(v));
      ++x;
      ++y;
    }
  }
  r = std::move(out);
}

void scale_row(Row& r, const HalfLaurent& a) {
  for (auto& [w, c] : r) c = a * c;
}

// Polynomial content of the row up to units; 1 if some entry is a unit.
HalfLaurent row_content(const Row& r) {
  for (const auto& [w, c] : r)
    if (is_unit(c)) return HalfLaurent(1);
  HalfLaurent g;
  for (const auto& [w, c] : r) {
    g = HalfLaurent::gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

void divide_row(Row& r, const HalfLaurent& g) {
  for (auto& [w, c] : r) c = HalfLaurent::divide_exact(c, g);
}

struct Pivot {
  Row row;
  RowHistory hist;
};

struct Block {
  std::unordered_map<PWord, int, pword::Hash> lead;
  std::size_t rows = 0;
  std::unordered_set<PWord, pword::Hash> cols;
};

struct Gen {
  Row terms;            // cleared, descending
  RatFunc clear;        // terms = clear · original
  WKey weight{};
  int maxdeg = 0;
  int mindeg = 0;
  std::size_t nterms = 0;
};

std::uint64_t fnv(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

}  // namespace

struct IdealSession::Impl {
  std::vector<NCPoly> generators;
  int N = 0;
  SessionOptions opts;
  Grading grading;
  bool graded = false;
  bool degree_keyed = false;
  bool use_t = false;
  std::vector<Gen> gens;
  std::vector<Pivot> pivots;
  std::unordered_map<WKey, std::unique_ptr<Block>, WKeyHash> blocks;
  std::size_t nonzeros = 0;
  // Letter words by length, with their weight keys.
  std::vector<std::vector<std::pair<PWord, WKey>>> words_by_len;
  std::vector<std::unordered_map<WKey, std::vector<PWord>, WKeyHash>> words_by_len_weight;

  WKey weight_key(const std::vector<int>& w) const {
    WKey k{};
    if (w.size() > static_cast<std::size_t>(kMaxDims)) throw std::invalid_argument("grading dimension too large");
    for (std::size_t i = 0; i < w.size(); ++i) k[i] = static_cast<std::int8_t>(w[i]);
    k[kMaxDims] = -1;
    return k;
  }

  WKey word_key(PWord p) const {
    WKey k = graded ? weight_key(grading.pword_weight(p)) : weight_key({});
    if (degree_keyed) k[kMaxDims] = static_cast<std::int8_t>(pword::degree(p));
    return k;
  }

  Row to_row(const NCPoly& p, RatFunc* clear_out) const {
    // Common denominator: lcm of the denominators.
    HalfLaurent L(1);
    for (const auto& [w, c] : p.terms()) {
      if (c.den().is_one()) continue;
      HalfLaurent g = HalfLaurent::gcd(L, c.den());
      L = L * HalfLaurent::divide_exact(c.den(), g);
    }
    Row r;
    r.reserve(p.size());
    for (const auto& [w, c] : p.terms()) {
      HalfLaurent v = L.is_one() ? c.num() : HalfLaurent::divide_exact(c.num() * L, c.den());
      r.emplace_back(pword::pack(w), std::move(v));
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    if (clear_out) *clear_out = RatFunc(L);
    return r;
  }

  void setup() {
    const int D = opts.degree_bound;
    if (D < 0) throw DegreeBoundError("negative degree bound");
    grading = opts.grading ? *opts.grading : Grading::trivial(N);
    graded = !grading.is_trivial();
    if (graded && grading.dim() > kMaxDims) graded = false;
    // Graded only if every generator is homogeneous.
    if (graded)
      for (const auto& g : generators)
        if (!grading.poly_weight(g)) {
          graded = false;
          break;
        }
    degree_keyed = true;
    use_t = opts.with_t;
    for (const auto& g : generators) {
      int mn = 1 << 20, mx = -1;
      for (const auto& [w, c] : g.terms()) {
        mn = std::min(mn, w.degree());
        mx = std::max(mx, w.degree());
        if (w.tpow > 0) use_t = true;
      }
      if (mn != mx) degree_keyed = false;
    }
    for (const auto& g : generators) {
      Gen G;
      G.terms = to_row(g, &G.clear);
      G.weight = graded ? weight_key(*grading.poly_weight(g)) : weight_key({});
      G.maxdeg = g.degree();
      int mn = 1 << 20;
      for (const auto& [w, c] : g.terms()) mn = std::min(mn, w.degree());
      G.mindeg = mn;
      G.nterms = g.size();
      gens.push_back(std::move(G));
    }
    // Enumerate letter words up to the bound.
    int min_gdeg = D;
    for (const auto& G : gens) min_gdeg = std::min(min_gdeg, G.maxdeg);
    const int maxlen = std::max(0, D - std::max(0, min_gdeg));
    words_by_len.assign(static_cast<std::size_t>(maxlen + 1), {});
    words_by_len_weight.assign(static_cast<std::size_t>(maxlen + 1), {});
    words_by_len[0].emplace_back(pword::pack(Word{}), weight_key(graded ? std::vector<int>(static_cast<std::size_t>(grading.dim()), 0) : std::vector<int>{}));
    std::vector<std::pair<PWord, WKey>> letters;
    std::vector<Letter> alphabet = opts.letters;
    if (alphabet.empty())
      for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
          alphabet.push_back(Letter{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
    for (const auto& l : alphabet) {
      Word w;
      w.letters.push_back(l);
      letters.emplace_back(pword::pack(w), graded ? weight_key(grading.letter_weight(l.i, l.j)) : weight_key({}));
    }
    for (int len = 1; len <= maxlen; ++len) {
      auto& cur = words_by_len[static_cast<std::size_t>(len)];
      const auto& prev = words_by_len[static_cast<std::size_t>(len - 1)];
      cur.reserve(prev.size() * letters.size());
      for (const auto& [pw, pk] : prev)
        for (const auto& [lw, lk] : letters) cur.emplace_back(pword::concat(pw, lw), add_keys(pk, lk));
    }
    for (int len = 0; len <= maxlen; ++len)
      for (const auto& [pw, k] : words_by_len[static_cast<std::size_t>(len)])
        words_by_len_weight[static_cast<std::size_t>(len)][k].push_back(pw);
  }

  void check_budget(const Block& b) {
    if (opts.memory_budget != 0 && nonzeros > opts.memory_budget)
      throw MemoryBudgetExceeded("elimination memory budget exceeded", b.rows, b.cols.size());
  }

  // Top-reduces r against the block; returns new pivot id or -1.
  int insert(Block& b, Row r, RowHistory hist) {
    auto step = [&](int piv, const HalfLaurent& a, const HalfLaurent& bb) {
      if (opts.track_history) hist.steps.push_back(ReductionStep{piv, RatFunc(a), RatFunc(bb)});
    };
    while (!r.empty()) {
      auto it = b.lead.find(r.front().first);
      if (it == b.lead.end()) break;
      const Pivot& P = pivots[static_cast<std::size_t>(it->second)];
      const HalfLaurent& cp = P.row.front().second;
      const HalfLaurent cr = r.front().second;
      if (cp.is_one()) {
        axpy(r, HalfLaurent(1), cr, P.row);
        step(it->second, HalfLaurent(1), cr);
      } else {
        HalfLaurent g = HalfLaurent::gcd(cr, cp);
        HalfLaurent a = HalfLaurent::divide_exact(cp, g);
        HalfLaurent bb = HalfLaurent::divide_exact(cr, g);
        axpy(r, a, bb, P.row);
        step(it->second, a, bb);
        if (!is_unit(a) && !r.empty()) {
          HalfLaurent c = row_content(r);
          if (!c.is_one()) {
            divide_row(r, c);
            if (opts.track_history) hist.steps.push_back(ReductionStep{-1, RatFunc(c).inverse(), RatFunc()});
          }
        }
      }
    }
    if (r.empty()) return -1;
    const HalfLaurent lc = r.front().second;
    if (is_unit(lc)) {
      if (!lc.is_one()) {
        HalfLaurent inv = unit_inverse(lc);
        scale_row(r, inv);
        step(-1, inv, HalfLaurent());
      }
    } else {
      HalfLaurent c = row_content(r);
      if (!c.is_one()) {
        divide_row(r, c);
        if (opts.track_history) hist.steps.push_back(ReductionStep{-1, RatFunc(c).inverse(), RatFunc()});
      }
    }
    const int id = static_cast<int>(pivots.size());
    b.lead.emplace(r.front().first, id);
    nonzeros += r.size();
    pivots.push_back(Pivot{std::move(r), opts.track_history ? std::move(hist) : RowHistory{}});
    return id;
  }

  Block& block(const WKey& key) {
    auto it = blocks.find(key);
    if (it != blocks.end()) return *it->second;
    auto owned = std::make_unique<Block>();
    Block& b = *owned;
    blocks.emplace(key, std::move(owned));
    build(b, key);
    return b;
  }

  struct Product {
    std::size_t nterms;
    int gen;
    PWord left;  // carries t^m
    PWord right;
  };

  void build(Block& b, const WKey& key) {
    const int D = opts.degree_bound;
    const int target_deg = degree_keyed ? key[kMaxDims] : -1;
    WKey wkey = key;
    wkey[kMaxDims] = -1;
    std::vector<Product> prods;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const Gen& G = gens[gi];
      if (G.terms.empty()) continue;
      const int room = D - G.maxdeg;
      if (room < 0) continue;
      const WKey need_g = sub_keys(wkey, G.weight);
      for (int l1 = 0; l1 <= room; ++l1)
        for (const auto& [w1, k1] : words_by_len[static_cast<std::size_t>(l1)]) {
          const WKey need = sub_keys(need_g, k1);
          for (int l2 = 0; l1 + l2 <= room; ++l2) {
            const auto& bucket = words_by_len_weight[static_cast<std::size_t>(l2)];
            auto jt = bucket.find(need);
            if (jt == bucket.end()) continue;
            const int mmax = use_t ? room - l1 - l2 : 0;
            for (int m = 0; m <= mmax; ++m) {
              if (degree_keyed && l1 + l2 + m + G.maxdeg != target_deg) continue;
              const PWord left = pword::with_tpow(w1, m);
              for (PWord w2 : jt->second) prods.push_back(Product{G.nterms, static_cast<int>(gi), left, w2});
            }
          }
        }
    }
    std::stable_sort(prods.begin(), prods.end(),
                     [](const Product& x, const Product& y) { return x.nterms < y.nterms; });
    for (const auto& pr : prods) {
      const Gen& G = gens[static_cast<std::size_t>(pr.gen)];
      Row r;
      r.reserve(G.terms.size());
      for (const auto& [w, c] : G.terms) r.emplace_back(pword::concat(pword::concat(pr.left, w), pr.right), c);
      // Concatenation with fixed outer words preserves the relative order.
      for (const auto& [w, c] : r) b.cols.insert(w);
      ++b.rows;
      RowHistory h;
      if (opts.track_history) {
        h.generator = pr.gen;
        h.left = pword::unpack(pr.left);
        h.right = pword::unpack(pr.right);
        if (!G.clear.is_one()) h.steps.push_back(ReductionStep{-1, G.clear, RatFunc()});
      }
      insert(b, std::move(r), std::move(h));
      check_budget(b);
    }
  }

  // Full reduction of one homogeneous part. Returns accumulated multiplier.
  HalfLaurent reduce_full(Block& b, Row& r, std::vector<ReductionStep>* steps) {
    HalfLaurent A(1);
    std::size_t idx = 0;
    while (idx < r.size()) {
      auto it = b.lead.find(r[idx].first);
      if (it == b.lead.end()) {
        ++idx;
        continue;
      }
      const Pivot& P = pivots[static_cast<std::size_t>(it->second)];
      const HalfLaurent& cp = P.row.front().second;
      const HalfLaurent cr = r[idx].second;
      HalfLaurent a(1), bb;
      if (cp.is_one()) {
        bb = cr;
      } else {
        HalfLaurent g = HalfLaurent::gcd(cr, cp);
        a = HalfLaurent::divide_exact(cp, g);
        bb = HalfLaurent::divide_exact(cr, g);
      }
      axpy(r, a, bb, P.row);
      if (!a.is_one()) A = A * a;
      if (steps) steps->push_back(ReductionStep{it->second, RatFunc(a), RatFunc(bb)});
    }
    return A;
  }

  void expand(const ReductionTrace& trace, std::map<std::tuple<int, Word, Word>, RatFunc>& acc);

  std::vector<NCPoly> split(const NCPoly& p) const {
    std::map<WKey, NCPoly> parts;
    for (const auto& [w, c] : p.terms()) parts[word_key(pword::pack(w))].add_term(w, c);
    std::vector<NCPoly> out;
    for (auto& [k, q] : parts) out.push_back(std::move(q));
    return out;
  }

  bool in_bound(const NCPoly& p) const {
    return p.degree() <= opts.degree_bound;
  }

  NCPoly normal_form(const NCPoly& p, ReductionTrace* trace) {
    if (!in_bound(p))
      throw DegreeBoundError("target degree " + std::to_string(p.degree()) + " exceeds bound " +
                             std::to_string(opts.degree_bound));
    NCPoly out(N);
    if (p.is_zero()) return out;
    RatFunc clear;
    Row all = to_row(p, &clear);
    if (trace && !clear.is_one()) trace->steps.push_back(ReductionStep{-1, clear, RatFunc()});
    // Split into blocks, preserving order.
    std::map<WKey, Row> parts;
    for (auto& t : all) parts[word_key(t.first)].push_back(std::move(t));
    for (auto& [k, r] : parts) {
      Block& b = block(k);
      HalfLaurent A = reduce_full(b, r, trace ? &trace->steps : nullptr);
      RatFunc denom = clear * RatFunc(A);
      for (const auto& [w, c] : r) out.add_term(pword::unpack(w), RatFunc(c) / denom);
    }
    return out;
  }
};

IdealSession::IdealSession(std::vector<NCPoly> generators, int N, SessionOptions opts)
    : impl_(std::make_unique<Impl>()) {
  for (auto& g : generators) {
    if (g.is_zero()) throw std::invalid_argument("zero generator");
    if (g.alphabet() != 0 && g.alphabet() != N) throw AlphabetMismatch("generator alphabet differs from session");
  }
  impl_->generators = std::move(generators);
  impl_->N = N;
  impl_->opts = std::move(opts);
  impl_->setup();
}

IdealSession::~IdealSession() = default;

int IdealSession::degree_bound() const { return impl_->opts.degree_bound; }
int IdealSession::N() const { return impl_->N; }
const std::vector<NCPoly>& IdealSession::generators() const { return impl_->generators; }
bool IdealSession::graded() const { return impl_->graded; }

SessionStats IdealSession::stats() const {
  SessionStats s;
  s.blocks = impl_->blocks.size();
  for (const auto& [k, b] : impl_->blocks) {
    s.rows += b->rows;
    s.cols += b->cols.size();
  }
  s.pivots = impl_->pivots.size();
  s.nonzeros = impl_->nonzeros;
  return s;
}

NCPoly IdealSession::normal_form(const NCPoly& p, ReductionTrace* trace) {
  return impl_->normal_form(p, trace);
}

bool IdealSession::contains(const NCPoly& p) { return impl_->normal_form(p, nullptr).is_zero(); }

std::optional<std::vector<CertificateTerm>> IdealSession::certificate(const NCPoly& p) {
  if (!impl_->opts.track_history) throw std::logic_error("certificate requires track_history");
  ReductionTrace trace;
  NCPoly nf = impl_->normal_form(p, &trace);
  if (!nf.is_zero()) return std::nullopt;
  std::vector<CertificateTerm> cert;
  if (p.is_zero()) return cert;
  std::map<std::tuple<int, Word, Word>, RatFunc> acc;
  for (const NCPoly& part : impl_->split(p)) {
    ReductionTrace ptrace;
    impl_->normal_form(part, &ptrace);
    impl_->expand(ptrace, acc);
  }
  for (auto& [key, c] : acc)
    if (!c.is_zero()) cert.push_back(CertificateTerm{std::get<1>(key), std::get<0>(key), std::get<2>(key), c});
  return cert;
}

void IdealSession::Impl::expand(const ReductionTrace& trace, std::map<std::tuple<int, Word, Word>, RatFunc>& acc) {
  // 0 = A·p − Σ_s b_s (Π_{s'>s} a_s') P_s, A = Π a. Walk the steps backwards.
  std::map<int, RatFunc, std::greater<int>> kappa;
  {
    RatFunc suffix(1);  // Π_{s'>s} a_s'
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
      if (it->pivot >= 0) kappa[it->pivot] += it->b * suffix;
      suffix *= it->a;
    }
    const RatFunc A = suffix;
    for (auto& [id, k] : kappa) k /= A;
  }
  // Expand pivots in decreasing id order.
  while (!kappa.empty()) {
    auto top = kappa.begin();
    const int id = top->first;
    const RatFunc k = top->second;
    kappa.erase(top);
    if (k.is_zero()) continue;
    const RowHistory& h = pivots[static_cast<std::size_t>(id)].hist;
    RatFunc suffix(1);
    for (auto it = h.steps.rbegin(); it != h.steps.rend(); ++it) {
      if (it->pivot >= 0) kappa[it->pivot] -= k * it->b * suffix;
      suffix *= it->a;
    }
    acc[{h.generator, h.left, h.right}] += k * suffix;
  }
}

std::string IdealSession::trace_digest(const NCPoly& p) {
  ReductionTrace trace;
  NCPoly nf = impl_->normal_form(p, &trace);
  std::uint64_t h = 1469598103934665603ULL;
  h = fnv(h, nf.to_string());
  for (const auto& s : trace.steps) {
    h = fnv(h, std::to_string(s.pivot));
    h = fnv(h, s.a.to_string());
    h = fnv(h, s.b.to_string());
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

NCPoly replay_certificate(const std::vector<CertificateTerm>& cert, const std::vector<NCPoly>& generators) {
  NCPoly out;
  for (const auto& t : cert) {
    const NCPoly& g = generators.at(static_cast<std::size_t>(t.generator));
    out += NCPoly::monomial(t.left, t.coeff) * g * NCPoly::monomial(t.right, RatFunc(1));
  }
  return out;
}

}  // namespace qgx
