#include "qgx/frtfamily.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "json.hpp"
#include "qgx/eliminate.hpp"

namespace qgx {

// ------------------------------------------------------------------ variants

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Plain: return "plain";
    case Variant::Special: return "special";
    case Variant::Tilde: return "tilde";
    case Variant::SpecialTilde: return "special-tilde";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "plain") return Variant::Plain;
  if (s == "special") return Variant::Special;
  if (s == "tilde") return Variant::Tilde;
  if (s == "special-tilde") return Variant::SpecialTilde;
  throw InvalidVariant("unknown variant '" + s + "'");
}

bool variant_valid(const Series& s, Variant v) {
  switch (s.tag) {
    case SeriesTag::A:
    case SeriesTag::B: return v != Variant::SpecialTilde;
    case SeriesTag::C: return v == Variant::Plain || v == Variant::Tilde;
    case SeriesTag::D: return true;
  }
  return false;
}

std::vector<Variant> valid_variants(const Series& s) {
  std::vector<Variant> out;
  for (Variant v : {Variant::Plain, Variant::Special, Variant::Tilde, Variant::SpecialTilde})
    if (variant_valid(s, v)) out.push_back(v);
  return out;
}

// ------------------------------------------------------------ linear algebra

namespace {

// Semi-echelon basis of a subspace of the free algebra, leads monic.
class LinearEchelon {
 public:
  // Returns true if p enlarged the span.
  bool insert(NCPoly p) {
    reduce(p);
    if (p.is_zero()) return false;
    auto lead = p.terms().rbegin();
    const Word w = lead->first;
    p *= lead->second.inverse();
    pivots_.emplace(w, std::move(p));
    return true;
  }
  void reduce(NCPoly& p) const {
    while (!p.is_zero()) {
      bool changed = false;
      for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        auto jt = pivots_.find(it->first);
        if (jt == pivots_.end()) continue;
        const RatFunc c = it->second;
        p -= jt->second * c;
        changed = true;
        break;
      }
      if (!changed) return;
    }
  }
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<Word, NCPoly> pivots_;
};

NCPoly V(int i, int j, int N) { return NCPoly::gen(i, j, N); }
NCPoly one(int N) { return NCPoly::constant(RatFunc(1), N); }
RatFunc minus_q_pow(int e) { return RatFunc::q_power(e) * RatFunc(e % 2 == 0 ? 1 : -1); }

std::vector<std::vector<int>> permutations(int N) {
  std::vector<int> p(static_cast<std::size_t>(N));
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

std::size_t linear_rank(const std::vector<NCPoly>& polys) {
  LinearEchelon e;
  for (const auto& p : polys) e.insert(p);
  return e.rank();
}

std::vector<NCPoly> frt_relations_raw(const RTensor& Rhat) {
  const int N = Rhat.N();
  auto rows = Rhat.by_row();
  auto cols = Rhat.by_col();
  std::vector<NCPoly> out;
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      for (int c = 1; c <= N; ++c)
        for (int d = 1; d <= N; ++d) {
          NCPoly p(N);
          if (auto it = rows.find({a, b}); it != rows.end())
            for (const auto& [kl, v] : it->second) p += V(kl.first, c, N) * V(kl.second, d, N) * v;
          if (auto it = cols.find({c, d}); it != cols.end())
            for (const auto& [kl, v] : it->second) p -= V(a, kl.first, N) * V(b, kl.second, N) * v;
          if (!p.is_zero()) out.push_back(std::move(p));
        }
  return out;
}

std::vector<NCPoly> frt_relations(const RTensor& Rhat) {
  std::vector<NCPoly> raw = frt_relations_raw(Rhat);
  // Drop scalar duplicates: normalize so the leading coefficient is 1.
  std::set<std::string> seen;
  std::vector<NCPoly> uniq;
  for (auto& p : raw) {
    NCPoly m = p * p.terms().rbegin()->second.inverse();
    if (seen.insert(m.to_string()).second) uniq.push_back(std::move(m));
  }
  // Keep the sparsest spanning subset.
  std::stable_sort(uniq.begin(), uniq.end(), [](const NCPoly& x, const NCPoly& y) { return x.size() < y.size(); });
  LinearEchelon e;
  std::vector<NCPoly> out;
  for (auto& p : uniq)
    if (e.insert(p)) out.push_back(std::move(p));
  return out;
}

// ----------------------------------------------------------------- cofactors

int inversions(const std::vector<int>& sigma) {
  int c = 0;
  for (std::size_t a = 0; a < sigma.size(); ++a)
    for (std::size_t b = a + 1; b < sigma.size(); ++b)
      if (sigma[a] > sigma[b]) ++c;
  return c;
}

namespace {

NCMatrix s_matrix_bcd(const Series& s) {
  const int N = s.N;
  const int n = s.n();
  const auto rho = rho_doubled(s);
  NCMatrix m(N, N);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      int sign = 1;
      if (s.tag == SeriesTag::C) sign = ((i - 1) / n + (j - 1) / n) % 2 == 0 ? 1 : -1;
      RatFunc c = RatFunc::u_power(rho[static_cast<std::size_t>(j - 1)] - rho[static_cast<std::size_t>(i - 1)]) *
                  RatFunc(sign);
      m.at(i, j) = V(N + 1 - j, N + 1 - i, N) * c;
    }
  return m;
}

NCMatrix s_matrix_a(const Series& s, bool column_form) {
  const int N = s.N;
  NCMatrix m(N, N);
  const auto perms = permutations(N);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      NCPoly acc(N);
      for (const auto& sg : perms) {
        auto at = [&](int k) { return sg[static_cast<std::size_t>(k - 1)]; };
        Word w;
        std::vector<int> rest;
        if (!column_form) {
          if (at(i) != j) continue;
          for (int k = 1; k <= N; ++k)
            if (k != i) {
              w.letters.push_back(Letter{static_cast<std::uint8_t>(at(k)), static_cast<std::uint8_t>(k)});
              rest.push_back(at(k));
            }
        } else {
          if (at(j) != i) continue;
          for (int k = 1; k <= N; ++k)
            if (k != j) {
              w.letters.push_back(Letter{static_cast<std::uint8_t>(k), static_cast<std::uint8_t>(at(k))});
              rest.push_back(at(k));
            }
        }
        acc.add_term(w, minus_q_pow(inversions(rest)) * minus_q_pow(i - j));
      }
      m.at(i, j) = std::move(acc);
    }
  return m;
}

}  // namespace

NCMatrix s_matrix(const Series& s) {
  return s.tag == SeriesTag::A ? s_matrix_a(s, false) : s_matrix_bcd(s);
}

NCMatrix s_matrix_column_form(const Series& s) {
  if (s.tag != SeriesTag::A) throw InvalidSeries("column-form cofactors are defined for series A only");
  return s_matrix_a(s, true);
}

// -------------------------------------------------------------- determinants

int r_statistic(const std::vector<int>& sigma, int n, DetReading reading) {
  const int N = static_cast<int>(sigma.size());
  std::vector<int> inv(static_cast<std::size_t>(N + 1));
  for (int k = 1; k <= N; ++k) inv[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k - 1)])] = k;
  const int upto = reading == DetReading::AllIndices ? N : n;
  int c = 0;
  for (int i = 1; i <= upto; ++i) {
    const int si = sigma[static_cast<std::size_t>(i - 1)];
    const int j = inv[static_cast<std::size_t>(N + 1 - si)];
    if (sigma[static_cast<std::size_t>(j - 1)] > si) ++c;
  }
  return c;
}

NCPoly quantum_determinant(const Series& s, DetForm form, DetReading reading) {
  if (s.tag == SeriesTag::B)
    throw InvalidSeries("permutation determinant is not defined for odd N");
  const int N = s.N;
  NCPoly out(N);
  for (const auto& sg : permutations(N)) {
    Word w;
    for (int k = 1; k <= N; ++k) {
      const auto v = static_cast<std::uint8_t>(sg[static_cast<std::size_t>(k - 1)]);
      const auto kk = static_cast<std::uint8_t>(k);
      w.letters.push_back(form == DetForm::Standard ? Letter{v, kk} : Letter{kk, v});
    }
    RatFunc c = minus_q_pow(inversions(sg));
    if (s.tag == SeriesTag::C) c *= RatFunc::q_power(r_statistic(sg, s.n(), reading));
    if (s.tag == SeriesTag::D) c *= RatFunc::q_power(-r_statistic(sg, s.n(), reading));
    out.add_term(w, c);
  }
  return out;
}

NCPoly exterior_determinant(const Series& s, const RTensor* Rhat_in) {
  const int N = s.N;
  const RTensor Rh = Rhat_in ? *Rhat_in : rhat(build_R(s));
  const RTensor I = RTensor::identity(N);
  RTensor P = Rh + RatFunc::q_power(-1) * I;
  if (s.tag == SeriesTag::C) P = P * (Rh + RatFunc::q_power(-N - 1) * I);
  // Letter x_a is encoded as V[a,1].
  auto x = [N](int a) { return NCPoly::gen(a, 1, N); };
  std::vector<NCPoly> rels;
  for (const auto& [col, entries] : P.by_col()) {
    NCPoly p(N);
    for (const auto& [row, v] : entries) p += x(row.first) * x(row.second) * v;
    if (!p.is_zero()) rels.push_back(std::move(p));
  }
  {
    LinearEchelon e;
    std::vector<NCPoly> basis;
    for (auto& r : rels)
      if (e.insert(r)) basis.push_back(r);
    rels = std::move(basis);
  }
  SessionOptions opts;
  opts.degree_bound = N;
  opts.grading = Grading::for_series(s);
  for (int a = 1; a <= N; ++a) opts.letters.push_back(Letter{static_cast<std::uint8_t>(a), 1});
  IdealSession session(rels, N, opts);
  const Grading& gr = *opts.grading;
  auto seq_word = [](const std::vector<int>& js) {
    Word w;
    for (int j : js) w.letters.push_back(Letter{static_cast<std::uint8_t>(j), 1});
    return w;
  };
  std::vector<int> base(static_cast<std::size_t>(N));
  std::iota(base.begin(), base.end(), 1);
  const auto target_weight = gr.word_weight(seq_word(base));
  NCPoly base_nf = session.normal_form(NCPoly::monomial(seq_word(base), RatFunc(1), N));
  if (base_nf.size() != 1) throw std::runtime_error("exterior algebra top degree is not one-dimensional");
  const Word top = base_nf.terms().begin()->first;
  const RatFunc top_c = base_nf.terms().begin()->second;
  NCPoly det(N);
  std::vector<int> js(static_cast<std::size_t>(N), 1);
  while (true) {
    const Word w = seq_word(js);
    if (gr.word_weight(w) == target_weight) {
      NCPoly nf = session.normal_form(NCPoly::monomial(w, RatFunc(1), N));
      if (!nf.is_zero()) {
        if (nf.size() != 1 || nf.terms().begin()->first != top)
          throw std::runtime_error("exterior algebra top degree is not one-dimensional");
        Word dw;
        for (int k = 1; k <= N; ++k)
          dw.letters.push_back(Letter{static_cast<std::uint8_t>(js[static_cast<std::size_t>(k - 1)]),
                                      static_cast<std::uint8_t>(k)});
        det.add_term(dw, nf.terms().begin()->second / top_c);
      }
    }
    int k = N - 1;
    while (k >= 0 && js[static_cast<std::size_t>(k)] == N) js[static_cast<std::size_t>(k--)] = 1;
    if (k < 0) break;
    ++js[static_cast<std::size_t>(k)];
  }
  return det;
}

NCPoly q_element(const Series& s, int i) {
  if (s.tag == SeriesTag::A) throw InvalidSeries("Q element is defined for series B, C, D");
  const NCMatrix sm = s_matrix(s);
  NCPoly acc(s.N);
  for (int k = 1; k <= s.N; ++k) acc += V(i, k, s.N) * sm.at(k, i);
  return acc;
}

NCPoly q_element_sv(const Series& s, int i) {
  if (s.tag == SeriesTag::A) throw InvalidSeries("Q element is defined for series B, C, D");
  const NCMatrix sm = s_matrix(s);
  NCPoly acc(s.N);
  for (int k = 1; k <= s.N; ++k) acc += sm.at(i, k) * V(k, i, s.N);
  return acc;
}

// ------------------------------------------------------------- presentations

const NCPoly& Presentation::central() const {
  if (series.tag == SeriesTag::A) {
    if (!det) throw std::logic_error("presentation has no determinant");
    return *det;
  }
  if (!qelt) throw std::logic_error("presentation has no Q element");
  return *qelt;
}

std::string Presentation::name() const { return series.name() + "/" + variant_name(variant); }

Presentation build_presentation(const Series& s, Variant v, const PresentationOptions& opts) {
  if (!variant_valid(s, v))
    throw InvalidVariant("variant " + variant_name(v) + " is not defined for series " + std::string(1, s.letter()));
  const int N = s.N;
  Presentation p;
  p.series = s;
  p.variant = v;
  p.has_t = v == Variant::Tilde || v == Variant::SpecialTilde;
  p.Rhat = opts.rhat_override ? *opts.rhat_override : rhat(build_R(s));
  p.relations = frt_relations(p.Rhat);
  for (std::size_t k = 0; k < p.relations.size(); ++k) p.labels.push_back("frt#" + std::to_string(k));
  p.frt_count = p.relations.size();
  p.s = s_matrix(s);
  const NCMatrix Vm = NCMatrix::generic(N);
  const NCPoly t = NCPoly::t(1, N);

  if (s.tag == SeriesTag::A) {
    p.det = quantum_determinant(s);
    if (v == Variant::Special) {
      p.relations.push_back(*p.det - one(N));
      p.labels.push_back("det-1");
      p.antipode = GeneratorImages::from_matrix(p.s, std::nullopt);
    } else if (v == Variant::Tilde) {
      p.relations.push_back(t * *p.det - one(N));
      p.labels.push_back("t*det-1");
      NCMatrix ts(N, N);
      for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) ts.at(i, j) = t * p.s.at(i, j);
      p.antipode = GeneratorImages::from_matrix(ts, *p.det);
    }
  } else {
    p.qelt = q_element(s, 1);
    const NCMatrix Vs = Vm * p.s;
    const NCMatrix sV = p.s * Vm;
    const bool tilde = p.has_t;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        const NCPoly d = i == j ? one(N) : NCPoly(N);
        const std::string ij = "[" + std::to_string(i) + "," + std::to_string(j) + "]";
        p.relations.push_back((tilde ? t * Vs.at(i, j) : Vs.at(i, j)) - d);
        p.labels.push_back(std::string(tilde ? "tVs" : "Vs") + ij);
        p.relations.push_back((tilde ? t * sV.at(i, j) : sV.at(i, j)) - d);
        p.labels.push_back(std::string(tilde ? "tsV" : "sV") + ij);
      }
    if (v == Variant::Special || v == Variant::SpecialTilde) {
      p.det = exterior_determinant(s, &p.Rhat);
      if (v == Variant::Special) {
        p.relations.push_back(*p.det - one(N));
        p.labels.push_back("det-1");
      } else {
        p.relations.push_back(NCPoly::t(s.n(), N) * *p.det - one(N));
        p.labels.push_back("t^n*det-1");
      }
    }
    if (tilde) {
      NCMatrix ts(N, N);
      for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) ts.at(i, j) = t * p.s.at(i, j);
      p.antipode = GeneratorImages::from_matrix(ts, *p.qelt);
    } else {
      p.antipode = GeneratorImages::from_matrix(p.s, std::nullopt);
    }
  }
  if (p.antipode) {
    // V[i,j]* = S(V[j,i]); t* = S(t).
    GeneratorImages st(N);
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) st.set(i, j, p.antipode->get(j, i));
    st.t = p.antipode->t;
    p.star = std::move(st);
  }
  // Drop zero extras (possible only after mutation of R̂).
  for (std::size_t k = p.relations.size(); k-- > 0;)
    if (p.relations[k].is_zero()) {
      p.relations.erase(p.relations.begin() + static_cast<std::ptrdiff_t>(k));
      p.labels.erase(p.labels.begin() + static_cast<std::ptrdiff_t>(k));
    }
  return p;
}

std::vector<NCPoly> ideal_generators(const Series& s, Variant v) { return build_presentation(s, v).relations; }

// ----------------------------------------------------------------- morphisms

std::string morphism_name(MorphismKind k) {
  switch (k) {
    case MorphismKind::Phi: return "phi";
    case MorphismKind::Rho: return "rho";
    case MorphismKind::PhiTilde: return "phitilde";
  }
  return "?";
}

GeneratorImages morphism_images(MorphismKind kind, const Series& target) {
  if (target.tag == SeriesTag::A) throw InvalidSeries("morphisms are defined for series B, C, D");
  const int N = target.N;
  if (kind == MorphismKind::Rho) {
    GeneratorImages g(N);
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) g.set(i, j, V(i, j, N));
    g.t = one(N);
    return g;
  }
  const int M = N + 2;
  GeneratorImages g(M);
  for (int i = 1; i <= M; ++i)
    for (int j = 1; j <= M; ++j) {
      if (i >= 2 && j >= 2 && i <= M - 1 && j <= M - 1) g.set(i, j, V(i - 1, j - 1, N));
      else g.set(i, j, i == j ? one(N) : NCPoly(N));
    }
  if (kind == MorphismKind::PhiTilde) {
    // The last corner carries 𝒬 so that t·𝒬 = 1 is preserved.
    g.set(M, M, q_element(target, 1));
    g.t = NCPoly::t(1, N);
  }
  return g;
}

GeneratorImages compose(const GeneratorImages& outer, const GeneratorImages& inner) {
  GeneratorImages g(inner.N);
  for (int i = 1; i <= inner.N; ++i)
    for (int j = 1; j <= inner.N; ++j) g.set(i, j, hom_apply(outer, inner.get(i, j)));
  if (inner.t) g.t = hom_apply(outer, *inner.t);
  return g;
}

std::vector<NCPoly> morphism_square_defect(const Series& target) {
  const Series source = Series::make(target.tag, target.N + 2);
  // φ∘ϱ_src : Z(N+2) → A(N+2) → A(N)
  const GeneratorImages left = compose(morphism_images(MorphismKind::Phi, target),
                                       morphism_images(MorphismKind::Rho, source));
  // ϱ_tgt∘φ̃ : Z(N+2) → Z(N) → A(N)
  const GeneratorImages right = compose(morphism_images(MorphismKind::Rho, target),
                                        morphism_images(MorphismKind::PhiTilde, target));
  std::vector<NCPoly> out;
  for (int i = 1; i <= source.N; ++i)
    for (int j = 1; j <= source.N; ++j)
      if (NCPoly d = left.get(i, j) - right.get(i, j); !d.is_zero()) out.push_back(std::move(d));
  if (NCPoly d = left.get_t() - right.get_t(); !d.is_zero()) out.push_back(std::move(d));
  return out;
}

bool morphism_square_commutes(const Series& target) { return morphism_square_defect(target).empty(); }

// ---------------------------------------------------------------------- JSON

std::string presentation_json(const Presentation& p) {
  using nlohmann::json;
  json j;
  j["series"] = std::string(1, p.series.letter());
  j["N"] = p.series.N;
  j["variant"] = variant_name(p.variant);
  j["generator_count"] = p.series.N * p.series.N + (p.has_t ? 1 : 0);
  j["has_t"] = p.has_t;
  json rels = json::array();
  for (std::size_t k = 0; k < p.relations.size(); ++k)
    rels.push_back({{"label", p.labels[k]}, {"poly", p.relations[k].to_string()}});
  j["relations"] = rels;
  json hopf;
  json s = json::array();
  for (int i = 1; i <= p.s.rows(); ++i) {
    json row = json::array();
    for (int k = 1; k <= p.s.cols(); ++k) row.push_back(p.s.at(i, k).to_string());
    s.push_back(row);
  }
  hopf["s"] = s;
  if (p.det) hopf["det"] = p.det->to_string();
  if (p.qelt) hopf["qelt"] = p.qelt->to_string();
  auto table = [&](const GeneratorImages& g) {
    json t;
    json m = json::array();
    for (int i = 1; i <= g.N; ++i) {
      json row = json::array();
      for (int k = 1; k <= g.N; ++k) row.push_back(g.get(i, k).to_string());
      m.push_back(row);
    }
    t["V"] = m;
    if (g.t) t["t"] = g.t->to_string();
    return t;
  };
  if (p.antipode) hopf["antipode"] = table(*p.antipode);
  if (p.star) hopf["star"] = table(*p.star);
  j["hopf"] = hopf;
  return j.dump(2);
}

}  // namespace qgx
