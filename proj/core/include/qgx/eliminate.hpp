// Degree-bounded two-sided ideal spans in the free algebra, computed by exact
// fraction-free sparse elimination over Q[u, 1/u].
//
// The span {w1·g·w2 : total degree ≤ D} is assembled lazily, one weight block
// at a time. A block holds a semi-echelon basis (pairwise distinct leading
// words); reduction of a target against it gives a canonical normal form.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qgx/coeffring.hpp"
#include "qgx/freealg.hpp"
#include "qgx/rmatrix.hpp"

namespace qgx {

class MemoryBudgetExceeded : public std::runtime_error {
 public:
  MemoryBudgetExceeded(const std::string& what, std::size_t rows, std::size_t cols)
      : std::runtime_error(what), rows_(rows), cols_(cols) {}
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
};

class DegreeBoundError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Word packed into 128 bits: degree (8 bits), t-power (8 bits), then up to
/// 14 letters of 8 bits each, left aligned. Unsigned comparison orders by
/// degree, then t-power, then lexicographically.
using PWord = unsigned __int128;

namespace pword {
constexpr int kMaxLetters = 14;
PWord pack(const Word& w);
Word unpack(PWord p);
inline int degree(PWord p) { return static_cast<int>(p >> 120); }
inline int tpow(PWord p) { return static_cast<int>((p >> 112) & 0xff); }
inline int length(PWord p) { return degree(p) - tpow(p); }
PWord concat(PWord a, PWord b);
PWord with_tpow(PWord p, int m);
struct Hash {
  std::size_t operator()(PWord p) const {
    auto lo = static_cast<std::uint64_t>(p);
    auto hi = static_cast<std::uint64_t>(p >> 64);
    return static_cast<std::size_t>(lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6)));
  }
};
}  // namespace pword

/// Weight grading on letters. Letter (i,j) gets (w(i), w(j)); t has weight 0.
/// Homogeneous generators make the elimination split into independent blocks.
class Grading {
 public:
  static Grading trivial(int N);
  /// Torus weights of the defining representation of the series.
  static Grading for_series(const Series& s);

  int N() const { return N_; }
  int dim() const { return 2 * static_cast<int>(index_weights_.empty() ? 0 : index_weights_[0].size()); }
  bool is_trivial() const { return dim() == 0; }
  std::vector<int> letter_weight(int i, int j) const;
  std::vector<int> word_weight(const Word& w) const;
  std::vector<int> pword_weight(PWord p) const;
  /// Weight shared by all terms, or nullopt if p is not homogeneous.
  std::optional<std::vector<int>> poly_weight(const NCPoly& p) const;

 private:
  int N_ = 0;
  std::vector<std::vector<int>> index_weights_;  // per index 1..N
};

/// r ← a·r − b·P[pivot]; pivot < 0 means r ← a·r.
struct ReductionStep {
  int pivot = -1;
  RatFunc a;
  RatFunc b;
};

/// How a stored basis row came about: the product w1·g·w2 followed by steps.
struct RowHistory {
  int generator = -1;
  Word left;  // may carry the t-power
  Word right;
  std::vector<ReductionStep> steps;
};

/// One (left word, generator, right word, coefficient) certificate entry.
struct CertificateTerm {
  Word left;
  int generator = -1;
  Word right;
  RatFunc coeff;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

struct SessionStats {
  std::size_t blocks = 0;
  std::size_t rows = 0;     // products inserted
  std::size_t cols = 0;     // distinct words touched
  std::size_t pivots = 0;   // basis size
  std::size_t nonzeros = 0; // stored coefficients
};

struct SessionOptions {
  int degree_bound = 2;
  bool track_history = false;
  /// Upper bound on stored coefficients across all blocks; 0 = unlimited.
  std::size_t memory_budget = 0;
  /// Force products t^m·w1·g·w2 with m > 0 even when no generator uses t.
  bool with_t = false;
  /// Use the torus grading when every generator is homogeneous.
  std::optional<Grading> grading;
  /// Letters allowed in the outer words w1, w2; empty means all V[i,j].
  std::vector<Letter> letters;
};

/// Degree-bounded ideal span with lazily built blocks.
class IdealSession {
 public:
  IdealSession(std::vector<NCPoly> generators, int N, SessionOptions opts);
  ~IdealSession();
  IdealSession(const IdealSession&) = delete;
  IdealSession& operator=(const IdealSession&) = delete;

  int degree_bound() const;
  int N() const;
  const std::vector<NCPoly>& generators() const;
  bool graded() const;
  SessionStats stats() const;

  /// Normal form modulo the span; zero iff p lies in the span.
  NCPoly normal_form(const NCPoly& p, ReductionTrace* trace = nullptr);
  bool contains(const NCPoly& p);

  /// Writes p = Σ coeff·(left·g·right); only with track_history. Returns
  /// nullopt if p is not in the span.
  std::optional<std::vector<CertificateTerm>> certificate(const NCPoly& p);

  /// Digest of the reduction trace of p (stable across runs).
  std::string trace_digest(const NCPoly& p);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Σ coeff·(left·g·right).
NCPoly replay_certificate(const std::vector<CertificateTerm>& cert, const std::vector<NCPoly>& generators);

}  // namespace qgx
