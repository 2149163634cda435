#include "qgx/rmatrix.hpp"

#include <algorithm>
#include <sstream>

namespace qgx {

// -------------------------------------------------------------------- Series

Series Series::make(SeriesTag tag, int N) {
  if (N < 1 || N > 15) throw InvalidSeries("matrix size out of range: " + std::to_string(N));
  switch (tag) {
    case SeriesTag::A:
      if (N < 2) throw InvalidSeries("series A needs n >= 2");
      break;
    case SeriesTag::B:
      if (N % 2 != 1 || N < 3) throw InvalidSeries("series B needs odd N >= 3");
      break;
    case SeriesTag::C:
    case SeriesTag::D:
      if (N % 2 != 0) throw InvalidSeries("series C/D need even N");
      break;
  }
  return Series{tag, N};
}

Series Series::parse(const std::string& letter, int N) {
  if (letter.size() != 1) throw InvalidSeries("unknown series '" + letter + "'");
  switch (letter[0]) {
    case 'a': case 'A': return make(SeriesTag::A, N);
    case 'b': case 'B': return make(SeriesTag::B, N);
    case 'c': case 'C': return make(SeriesTag::C, N);
    case 'd': case 'D': return make(SeriesTag::D, N);
    default: throw InvalidSeries("unknown series '" + letter + "'");
  }
}

int Series::n() const {
  switch (tag) {
    case SeriesTag::A: return N;
    case SeriesTag::B: return (N - 1) / 2;
    default: return N / 2;
  }
}

char Series::letter() const { return "ABCD"[static_cast<int>(tag)]; }

std::string Series::name() const { return std::string(1, letter()) + std::to_string(N); }

std::vector<int> rho_doubled(const Series& s) {
  std::vector<int> r(static_cast<std::size_t>(s.N));
  const int N = s.N;
  const int n = s.n();
  for (int j = 1; j <= N; ++j) {
    int v = 0;
    switch (s.tag) {
      case SeriesTag::A:
        v = N + 1 - 2 * j;  // ρ_j = (N+1)/2 - j, only used for reporting
        break;
      case SeriesTag::C:
        v = j <= n ? 2 * (n + 1 - j) : 2 * (n - j);
        break;
      case SeriesTag::D:
        v = j <= n ? 2 * (n - j) : 2 * (n + 1 - j);
        break;
      case SeriesTag::B:
        // Upper half fixed by antisymmetry ρ_{N+1-j} = -ρ_j.
        v = j <= n ? 2 * n + 1 - 2 * j : (j == n + 1 ? 0 : 2 * n + 3 - 2 * j);
        break;
    }
    r[static_cast<std::size_t>(j - 1)] = v;
  }
  return r;
}

// ------------------------------------------------------------------- RTensor

namespace {

RTensor::Key key(int k, int l, int i, int j) {
  return {static_cast<std::uint8_t>(k), static_cast<std::uint8_t>(l), static_cast<std::uint8_t>(i),
          static_cast<std::uint8_t>(j)};
}

}  // namespace

RTensor RTensor::identity(int N) {
  RTensor t(N);
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) t.set(a, b, a, b, RatFunc(1));
  return t;
}

RTensor RTensor::flip(int N) {
  RTensor t(N);
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) t.set(b, a, a, b, RatFunc(1));
  return t;
}

RatFunc RTensor::get(int k, int l, int i, int j) const {
  auto it = entries_.find(key(k, l, i, j));
  return it == entries_.end() ? RatFunc() : it->second;
}

void RTensor::set(int k, int l, int i, int j, const RatFunc& v) {
  if (v.is_zero()) entries_.erase(key(k, l, i, j));
  else entries_[key(k, l, i, j)] = v;
}

void RTensor::add(int k, int l, int i, int j, const RatFunc& v) {
  if (v.is_zero()) return;
  auto [it, ins] = entries_.try_emplace(key(k, l, i, j), v);
  if (!ins) {
    it->second += v;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

std::map<PairIndex, std::vector<std::pair<PairIndex, RatFunc>>> RTensor::by_row() const {
  std::map<PairIndex, std::vector<std::pair<PairIndex, RatFunc>>> m;
  for (const auto& [k, v] : entries_) m[{k[0], k[1]}].emplace_back(PairIndex{k[2], k[3]}, v);
  return m;
}

std::map<PairIndex, std::vector<std::pair<PairIndex, RatFunc>>> RTensor::by_col() const {
  std::map<PairIndex, std::vector<std::pair<PairIndex, RatFunc>>> m;
  for (const auto& [k, v] : entries_) m[{k[2], k[3]}].emplace_back(PairIndex{k[0], k[1]}, v);
  return m;
}

RTensor operator*(const RTensor& a, const RTensor& b) {
  if (a.N_ != b.N_) throw std::invalid_argument("RTensor size mismatch");
  RTensor r(a.N_);
  auto brow = b.by_row();
  for (const auto& [k, v] : a.entries_) {
    auto it = brow.find({k[2], k[3]});
    if (it == brow.end()) continue;
    for (const auto& [col, w] : it->second) r.add(k[0], k[1], col.first, col.second, v * w);
  }
  return r;
}

RTensor operator+(const RTensor& a, const RTensor& b) {
  if (a.N_ != b.N_) throw std::invalid_argument("RTensor size mismatch");
  RTensor r = a;
  for (const auto& [k, v] : b.entries_) r.add(k[0], k[1], k[2], k[3], v);
  return r;
}

RTensor operator-(const RTensor& a, const RTensor& b) { return a + RatFunc(-1) * b; }

RTensor operator*(const RatFunc& c, const RTensor& a) {
  RTensor r(a.N_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : a.entries_) r.entries_[k] = c * v;
  return r;
}

std::string RTensor::dump() const {
  std::ostringstream os;
  for (const auto& [k, v] : entries_)
    os << int(k[0]) << ' ' << int(k[1]) << ' ' << int(k[2]) << ' ' << int(k[3]) << ' ' << v.to_string()
       << '\n';
  return os.str();
}

RTensor RTensor::parse_dump(const std::string& text, int N) {
  RTensor t(N);
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    int k, l, i, j;
    if (!(ls >> k >> l >> i >> j)) throw ParseError("dump line " + std::to_string(lineno));
    for (int x : {k, l, i, j})
      if (x < 1 || x > N) throw ParseError("dump index out of range on line " + std::to_string(lineno));
    std::string rest;
    std::getline(ls, rest);
    t.add(k, l, i, j, RatFunc::parse(rest));
  }
  return t;
}

// ----------------------------------------------------------------- builders

RTensor build_R(const Series& s) {
  const int N = s.N;
  RTensor R(N);
  const RatFunc qm = RatFunc::q_minus_qinv();
  if (s.tag == SeriesTag::A) {
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        if (i == j) R.add(i, i, i, i, RatFunc::q_power(1));
        else R.add(i, j, i, j, RatFunc(1));
        if (i > j) R.add(i, j, j, i, qm);
      }
    return R;
  }
  const auto rho = rho_doubled(s);
  const int n = s.n();
  auto rh = [&](int j) { return rho[static_cast<std::size_t>(j - 1)]; };
  // R[(i,j),(m,r)] with (i,j) the row pair.
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      R.add(i, j, i, j, RatFunc::q_power((i == j ? 1 : 0) - (i == N + 1 - j ? 1 : 0)));
      for (int m = 1; m < i; ++m) {
        if (j == m) R.add(i, j, m, i, qm);
        if (j == N + 1 - i) {
          const int r = N + 1 - m;
          RatFunc e = RatFunc::u_power(rh(r) - rh(j));
          int sign = -1;
          if (s.tag == SeriesTag::C) sign = ((j - 1) / n + (m - 1) / n) % 2 == 0 ? 1 : -1;
          R.add(i, j, m, r, qm * e * RatFunc(sign));
        }
      }
    }
  return R;
}

RTensor rhat(const RTensor& R) {
  RTensor r(R.N());
  for (const auto& [k, v] : R.entries()) r.set(k[1], k[0], k[2], k[3], v);
  return r;
}

RTensor inverse(const RTensor& T) {
  const int N = T.N();
  const int D = N * N;
  auto idx = [N](int a, int b) { return (a - 1) * N + (b - 1); };
  // Augmented sparse rows [T | I].
  std::vector<std::map<int, RatFunc>> rows(static_cast<std::size_t>(D));
  for (const auto& [k, v] : T.entries()) rows[static_cast<std::size_t>(idx(k[0], k[1]))][idx(k[2], k[3])] = v;
  for (int r = 0; r < D; ++r) rows[static_cast<std::size_t>(r)][D + r] = RatFunc(1);
  for (int c = 0; c < D; ++c) {
    // Pick the sparsest row with a nonzero in column c.
    int piv = -1;
    std::size_t best = SIZE_MAX;
    for (int r = c; r < D; ++r) {
      auto& row = rows[static_cast<std::size_t>(r)];
      if (row.count(c) && row.size() < best) {
        best = row.size();
        piv = r;
      }
    }
    if (piv < 0) throw SingularMatrix("RTensor is singular");
    std::swap(rows[static_cast<std::size_t>(c)], rows[static_cast<std::size_t>(piv)]);
    auto& prow = rows[static_cast<std::size_t>(c)];
    RatFunc inv = prow.at(c).inverse();
    for (auto& [col, v] : prow) v *= inv;
    for (int r = 0; r < D; ++r) {
      if (r == c) continue;
      auto& row = rows[static_cast<std::size_t>(r)];
      auto it = row.find(c);
      if (it == row.end()) continue;
      RatFunc f = it->second;
      for (const auto& [col, v] : prow) {
        auto [jt, ins] = row.try_emplace(col, RatFunc());
        jt->second -= f * v;
        if (jt->second.is_zero()) row.erase(jt);
      }
    }
  }
  RTensor out(N);
  for (int r = 0; r < D; ++r)
    for (const auto& [col, v] : rows[static_cast<std::size_t>(r)])
      if (col >= D) {
        int cc = col - D;
        out.set(r / N + 1, r % N + 1, cc / N + 1, cc % N + 1, v);
      }
  return out;
}

namespace {

// Sparse operator on (C^N)^{⊗3}, indices packed base N.
using Op3 = std::map<std::pair<int, int>, RatFunc>;

Op3 lift(const RTensor& T, bool left) {
  const int N = T.N();
  Op3 op;
  for (const auto& [k, v] : T.entries())
    for (int x = 0; x < N; ++x) {
      int row, col;
      if (left) {
        row = ((k[0] - 1) * N + (k[1] - 1)) * N + x;
        col = ((k[2] - 1) * N + (k[3] - 1)) * N + x;
      } else {
        row = x * N * N + (k[0] - 1) * N + (k[1] - 1);
        col = x * N * N + (k[2] - 1) * N + (k[3] - 1);
      }
      op.emplace(std::make_pair(row, col), v);
    }
  return op;
}

Op3 mul(const Op3& a, const Op3& b) {
  std::map<int, std::vector<std::pair<int, const RatFunc*>>> brow;
  for (const auto& [k, v] : b) brow[k.first].emplace_back(k.second, &v);
  Op3 r;
  for (const auto& [k, v] : a) {
    auto it = brow.find(k.second);
    if (it == brow.end()) continue;
    for (const auto& [col, w] : it->second) {
      auto [jt, ins] = r.try_emplace({k.first, col}, v * *w);
      if (!ins) {
        jt->second += v * *w;
        if (jt->second.is_zero()) r.erase(jt);
      }
    }
  }
  return r;
}

}  // namespace

bool braid_check(const RTensor& Rhat) {
  Op3 A = lift(Rhat, true);
  Op3 B = lift(Rhat, false);
  return mul(mul(A, B), A) == mul(mul(B, A), B);
}

RTensor ktensor_explicit(const Series& s) {
  if (s.tag == SeriesTag::A) throw InvalidSeries("no K tensor for series A");
  const int N = s.N;
  const int n = s.n();
  const auto rho = rho_doubled(s);
  RTensor K(N);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      int sign = 1;
      if (s.tag == SeriesTag::C) sign = ((i - 1) / n + (j - 1) / n) % 2 == 0 ? 1 : -1;
      RatFunc c = RatFunc::u_power(rho[static_cast<std::size_t>(i - 1)] - rho[static_cast<std::size_t>(j - 1)]) *
                  RatFunc(sign);
      // E_{N+1-i,j} ⊗ E_{i,N+1-j}
      K.add(N + 1 - i, i, j, N + 1 - j, c);
    }
  return K;
}

RTensor ktensor_from_rhat(const RTensor& Rhat) {
  RTensor Ri = inverse(Rhat);
  RatFunc f = RatFunc::q_minus_qinv().inverse();
  return RTensor::identity(Rhat.N()) - f * (Rhat - Ri);
}

RatFunc displayed_k_prefactor(const Series& s) {
  const RatFunc qm = RatFunc::q_minus_qinv();
  auto Q = [](int e) { return RatFunc::q_power(e); };
  if (s.tag == SeriesTag::C) {
    const int n = s.n();
    RatFunc num = RatFunc(1) - qm.inverse() * (Q(2 * n + 1) - Q(-2 * n - 1));
    RatFunc den = (-Q(1) - Q(-2 * n - 1)) * (Q(-1) - Q(-2 * n - 1));
    return num / den;
  }
  if (s.tag == SeriesTag::B || s.tag == SeriesTag::D) {
    const int N = s.N;
    RatFunc num = RatFunc(1) + qm.inverse() * (Q(N - 1) - Q(1 - N));
    RatFunc den = (Q(1 - N) - Q(1)) * (Q(-1) + Q(1 - N));
    return num / den;
  }
  throw InvalidSeries("no K prefactor for series A");
}

KFit k_polynomial_fit(const Series& s, const RTensor& Rhat, const RTensor& K) {
  KFit fit;
  const RTensor R2 = Rhat * Rhat;
  const RTensor I = RTensor::identity(Rhat.N());
  // Stack one equation per position that is nonzero in any operand.
  std::map<RTensor::Key, std::array<RatFunc, 4>> eqs;
  auto put = [&](const RTensor& T, int slot) {
    for (const auto& [k, v] : T.entries()) eqs[k][static_cast<std::size_t>(slot)] = v;
  };
  put(R2, 0);
  put(Rhat, 1);
  put(I, 2);
  put(K, 3);
  std::vector<std::array<RatFunc, 4>> rows;
  rows.reserve(eqs.size());
  for (auto& [k, r] : eqs) rows.push_back(r);
  // Gaussian elimination on the 3 unknowns.
  std::size_t rank = 0;
  std::array<int, 3> pivcol{-1, -1, -1};
  for (int c = 0; c < 3 && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][static_cast<std::size_t>(c)].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    RatFunc inv = rows[rank][static_cast<std::size_t>(c)].inverse();
    for (auto& v : rows[rank]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][static_cast<std::size_t>(c)].is_zero()) continue;
      RatFunc f = rows[r][static_cast<std::size_t>(c)];
      for (std::size_t x = 0; x < 4; ++x) rows[r][x] -= f * rows[rank][x];
    }
    pivcol[rank] = c;
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (!rows[r][3].is_zero()) return fit;
  // Free unknowns are set to zero when {I, R̂, R̂²} is dependent (N = 2).
  std::array<RatFunc, 3> sol{RatFunc(0), RatFunc(0), RatFunc(0)};
  for (std::size_t r = 0; r < rank; ++r) sol[static_cast<std::size_t>(pivcol[r])] = rows[r][3];
  fit.in_span = true;
  fit.unique = rank == 3;
  fit.a = sol[0];
  fit.b = sol[1];
  fit.c = sol[2];
  if (s.tag != SeriesTag::A) {
    fit.displayed_prefactor = displayed_k_prefactor(s);
    const RatFunc& p = fit.displayed_prefactor;
    const RatFunc pb = -p * RatFunc::q_minus_qinv();
    if (fit.unique)
      fit.matches_displayed = fit.a == p && fit.b == pb && fit.c == -p;
    else
      fit.matches_displayed = (p * R2 + pb * Rhat + (-p) * I) == K;
  }
  return fit;
}

}  // namespace qgx
