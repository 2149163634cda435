#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>

#include "json.hpp"
#include "qgx/idealcheck.hpp"

namespace qgx {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::NotCertified: return "not-certified-within-bound";
    case Verdict::CounitExactPass: return "counit-exact-pass";
    case Verdict::ExactFail: return "exact-fail";
  }
  return "?";
}

bool BatteryReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.role != "claim" || c.passed(); });
}

namespace {

using Clock = std::chrono::steady_clock;

std::string idx(int i, int j) { return "[" + std::to_string(i) + "," + std::to_string(j) + "]"; }
std::string idx(int i) { return "[" + std::to_string(i) + "]"; }

std::uint64_t fnv(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

enum class Ideal { Frt, Variant };

// One target (or a batch of targets that share a verdict).
struct Target {
  std::vector<NCPoly> polys;
  std::vector<TensorPoly> tensors;
  int degree() const {
    int d = 0;
    for (const auto& p : polys) d = std::max(d, p.degree());
    for (const auto& t : tensors)
      for (const auto& [k, c] : t.terms()) d = std::max({d, k.first.degree(), k.second.degree()});
    return d;
  }
};

class Runner {
 public:
  Runner(const Presentation& p, const BatteryOptions& o) : p_(p), opts_(o) {
    frt_.assign(p.relations.begin(), p.relations.begin() + static_cast<std::ptrdiff_t>(p.frt_count));
    report_.presentation = p.name();
  }

  BatteryReport run() {
    if (want('a')) check_a();
    if (want('b')) check_b();
    if (want('c')) check_c();
    if (want('d')) check_d();
    if (want('e')) check_e();
    if (want('f')) check_f();
    if (want('g')) check_g();
    if (want('h')) check_h();
    if (want('i')) check_i();
    std::stable_sort(report_.checks.begin(), report_.checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.group < b.group; });
    return std::move(report_);
  }

 private:
  bool want(char g) const { return opts_.groups.empty() || opts_.groups.find(g) != std::string::npos; }
  int N() const { return p_.N(); }
  bool is_a() const { return p_.series.tag == SeriesTag::A; }
  NCPoly V(int i, int j) const { return NCPoly::gen(i, j, N()); }
  NCPoly one() const { return NCPoly::constant(RatFunc(1), N()); }
  NCPoly delta(int i, int j) const { return i == j ? one() : NCPoly(N()); }

  const std::vector<NCPoly>& gens(Ideal which) const { return which == Ideal::Frt ? frt_ : p_.relations; }

  IdealSession& session(Ideal which, int bound) {
    auto key = std::make_pair(static_cast<int>(which), bound);
    auto it = sessions_.find(key);
    if (it != sessions_.end()) return *it->second;
    SessionOptions so;
    so.degree_bound = bound;
    so.track_history = opts_.certificates;
    so.memory_budget = opts_.memory_budget;
    so.grading = Grading::for_series(p_.series);
    auto s = std::make_unique<IdealSession>(gens(which), N(), so);
    return *sessions_.emplace(key, std::move(s)).first->second;
  }

  CheckResult base(const std::string& name, char group) const {
    CheckResult r;
    r.name = name;
    r.group = std::string(1, group);
    r.series = std::string(1, p_.series.letter());
    r.N = N();
    r.variant = variant_name(p_.variant);
    return r;
  }

  void membership(const std::string& name, char group, Ideal which, const Target& t,
                  const std::string& role = "claim") {
    const auto t0 = Clock::now();
    CheckResult r = base(name, group);
    r.role = role;
    // Generators above the bound simply do not take part (sub-ideal membership).
    int bound = std::max(opts_.degree_bound, t.degree());
    // Diagnostics never affect the verdict, so they are not retried.
    const int last = opts_.retry && role == "claim" ? bound + 1 : bound;
    r.verdict = Verdict::NotCertified;
    if (bound > opts_.max_bound) {
      r.bound = bound;
      r.witness = "target degree " + std::to_string(t.degree()) + " exceeds the maximum bound " +
                  std::to_string(opts_.max_bound);
    }
    for (; bound <= std::min(last, opts_.max_bound); ++bound) {
      r.bound = bound;
      try {
        IdealSession& s = session(which, bound);
        std::uint64_t h = 1469598103934665603ULL;
        bool ok = true;
        std::string witness;
        for (const auto& poly : t.polys) {
          MembershipReport m = membership_in(s, poly, opts_.certificates);
          h = fnv(h, m.digest);
          r.rows = m.rows;
          r.cols = m.cols;
          if (!m.in_span) {
            ok = false;
            witness = m.residual.to_string();
            break;
          }
        }
        for (std::size_t k = 0; ok && k < t.tensors.size(); ++k) {
          MembershipReport m = tensor_membership_in(s, t.tensors[k], opts_.certificates);
          h = fnv(h, m.digest);
          r.rows = m.rows;
          r.cols = m.cols;
          if (!m.in_span) {
            ok = false;
            witness = "tensor target #" + std::to_string(k) + " not in I⊗A + A⊗I";
          }
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        r.certificate_digest = buf;
        if (ok) {
          r.verdict = Verdict::Certified;
          r.witness.clear();
          break;
        }
        r.witness = witness;
      } catch (const MemoryBudgetExceeded& e) {
        r.rows = e.rows();
        r.cols = e.cols();
        r.witness = e.what();
        break;
      }
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    report_.checks.push_back(std::move(r));
  }

  void membership(const std::string& name, char group, Ideal which, const NCPoly& target) {
    membership(name, group, which, Target{{target}, {}});
  }

  void exact(const std::string& name, char group, bool ok, const std::string& witness,
             const std::string& role = "claim") {
    CheckResult r = base(name, group);
    r.role = role;
    r.verdict = ok ? Verdict::CounitExactPass : Verdict::ExactFail;
    if (!ok) r.witness = witness;
    report_.checks.push_back(std::move(r));
  }

  NCMatrix Vmat() const { return NCMatrix::generic(N()); }

  // (a) V·s = 𝒬·I and s·V = 𝒬·I modulo the FRT ideal (𝒟 for series A).
  void check_a() {
    const NCPoly& c = p_.central();
    const NCMatrix Vs = Vmat() * p_.s;
    const NCMatrix sV = p_.s * Vmat();
    for (int i = 1; i <= N(); ++i)
      for (int j = 1; j <= N(); ++j) {
        const NCPoly d = i == j ? c : NCPoly(N());
        membership("Vs" + idx(i, j), 'a', Ideal::Frt, Vs.at(i, j) - d);
        membership("sV" + idx(i, j), 'a', Ideal::Frt, sV.at(i, j) - d);
      }
  }

  // (b) centrality of 𝒬 (𝒟 for series A).
  void check_b() {
    const NCPoly& c = p_.central();
    for (int a = 1; a <= N(); ++a)
      for (int b = 1; b <= N(); ++b) membership("central" + idx(a, b), 'b', Ideal::Frt, commutator(c, V(a, b)));
  }

  // (c) A: row and column forms agree. B/C/D: 𝒬 does not depend on i.
  void check_c() {
    const Series& s = p_.series;
    if (is_a()) {
      const NCMatrix col = s_matrix_column_form(s);
      for (int i = 1; i <= N(); ++i)
        for (int j = 1; j <= N(); ++j)
          membership("minor-forms" + idx(i, j), 'c', Ideal::Frt, p_.s.at(i, j) - col.at(i, j));
      membership("det-forms", 'c', Ideal::Frt,
                 quantum_determinant(s, DetForm::Standard) - quantum_determinant(s, DetForm::Transposed));
      return;
    }
    const NCPoly q1 = q_element(s, 1);
    for (int i = 2; i <= N(); ++i) membership("qelt-row" + idx(i), 'c', Ideal::Frt, q_element(s, i) - q1);
    for (int i = 1; i <= N(); ++i) membership("qelt-sv" + idx(i), 'c', Ideal::Frt, q_element_sv(s, i) - q1);
  }

  // (d) group-like elements.
  void check_d() {
    const Series& s = p_.series;
    auto grouplike = [&](const NCPoly& g) { return coproduct(g, N()) - TensorPoly::pure(g, g); };
    if (is_a()) {
      membership("det-grouplike", 'd', Ideal::Frt, Target{{}, {grouplike(*p_.det)}});
      return;
    }
    membership("qelt-grouplike", 'd', Ideal::Frt, Target{{}, {grouplike(*p_.qelt)}});
    if (p_.det) membership("det-grouplike", 'd', Ideal::Frt, Target{{}, {grouplike(*p_.det)}});
    // The permutation determinant of the even series under both readings of r(σ).
    if (opts_.diagnostics && s.tag != SeriesTag::B && N() <= 4) {
      for (auto reading : {DetReading::AllIndices, DetReading::FirstHalf}) {
        const NCPoly d = quantum_determinant(s, DetForm::Standard, reading);
        const std::string tag = reading == DetReading::AllIndices ? "all-indices" : "first-half";
        membership("perm-det-grouplike[" + tag + "]", 'd', Ideal::Frt, Target{{}, {grouplike(d)}}, "diagnostic");
      }
    }
  }

  // (e) exact counit values, and ε of every ideal generator.
  void check_e() {
    if (p_.qelt) {
      const RatFunc e = counit(*p_.qelt);
      exact("counit-qelt", 'e', e.is_one(), "ε = " + e.to_string());
    }
    if (p_.det) {
      const RatFunc e = counit(*p_.det);
      exact("counit-det", 'e', e.is_one(), "ε = " + e.to_string());
    }
    std::string bad;
    for (std::size_t k = 0; k < p_.relations.size(); ++k)
      if (!counit(p_.relations[k]).is_zero()) {
        bad = p_.labels[k] + ": ε = " + counit(p_.relations[k]).to_string();
        break;
      }
    exact("counit-relations", 'e', bad.empty(), bad);
    // Δ(g) ∈ I⊗A + A⊗I for every FRT relation g.
    Target coideal;
    for (const auto& g : frt_) coideal.tensors.push_back(coproduct(g, N()));
    membership("coproduct-relations", 'e', Ideal::Frt, coideal);
  }

  // (f) Σ_k S(V[i,k])V[k,j] = δ = Σ_k V[i,k]S(V[k,j]) in the variant ideal.
  void check_f() {
    if (!p_.antipode) return;
    const GeneratorImages& S = *p_.antipode;
    for (int i = 1; i <= N(); ++i)
      for (int j = 1; j <= N(); ++j) {
        NCPoly l(N()), r(N());
        for (int k = 1; k <= N(); ++k) {
          l += S.get(i, k) * V(k, j);
          r += V(i, k) * S.get(k, j);
        }
        membership("antipode-left" + idx(i, j), 'f', Ideal::Variant, l - delta(i, j));
        membership("antipode-right" + idx(i, j), 'f', Ideal::Variant, r - delta(i, j));
      }
    if (p_.has_t) membership("antipode[t]", 'f', Ideal::Variant, S.get_t() * NCPoly::t(1, N()) - one());
  }

  // (g) S²(V[i,j]) = q^{2(ρ_j−ρ_i)} V[i,j].
  void check_g() {
    if (!p_.antipode) return;
    const GeneratorImages& S = *p_.antipode;
    const auto rho = rho_doubled(p_.series);
    for (int i = 1; i <= N(); ++i)
      for (int j = 1; j <= N(); ++j) {
        const int e = 2 * (rho[static_cast<std::size_t>(j - 1)] - rho[static_cast<std::size_t>(i - 1)]);
        const NCPoly s2 = anti_hom_apply(S, S.get(i, j));
        membership("S2" + idx(i, j), 'g', Ideal::Variant, s2 - V(i, j) * RatFunc::u_power(e));
      }
    if (p_.has_t) membership("S2[t]", 'g', Ideal::Variant, anti_hom_apply(S, S.get_t()) - NCPoly::t(1, N()));
  }

  // (h) * is involutive and V is unitary.
  void check_h() {
    if (!p_.star) return;
    const GeneratorImages& st = *p_.star;
    for (int i = 1; i <= N(); ++i)
      for (int j = 1; j <= N(); ++j)
        membership("star-involutive" + idx(i, j), 'h', Ideal::Variant, star_apply(st, st.get(i, j)) - V(i, j));
    if (p_.has_t)
      membership("star-involutive[t]", 'h', Ideal::Variant, star_apply(st, st.get_t()) - NCPoly::t(1, N()));
    for (int i = 1; i <= N(); ++i)
      for (int j = 1; j <= N(); ++j) {
        NCPoly u(N());
        for (int k = 1; k <= N(); ++k) u += V(i, k) * st.get(j, k);
        membership("unitarity" + idx(i, j), 'h', Ideal::Variant, u - delta(i, j));
      }
  }

  // (i) φ, ϱ, φ̃ send source ideal generators into the target ideal.
  void check_i() {
    const Series& s = p_.series;
    if (is_a()) return;
    if (p_.variant != Variant::Plain && p_.variant != Variant::Tilde) return;
    auto images = [&](MorphismKind kind, const Presentation& src) {
      const GeneratorImages m = morphism_images(kind, s);
      Target t;
      for (const auto& g : src.relations) {
        NCPoly img = hom_apply(m, g);
        img.set_alphabet(N());
        if (!img.is_zero()) t.polys.push_back(std::move(img));
      }
      return t;
    };
    const Series big = Series::make(s.tag, N() + 2);
    if (p_.variant == Variant::Plain) {
      membership("morphism[phi]", 'i', Ideal::Variant, images(MorphismKind::Phi, build_presentation(big, Variant::Plain)));
      membership("morphism[rho]", 'i', Ideal::Variant, images(MorphismKind::Rho, build_presentation(s, Variant::Tilde)));
      // The square lands in the plain quotient; entries may differ by elements of its ideal.
      const std::vector<NCPoly> defect = morphism_square_defect(s);
      if (defect.empty()) exact("morphism-square", 'i', true, "");
      else membership("morphism-square", 'i', Ideal::Variant, Target{defect, {}});
    } else {
      membership("morphism[phitilde]", 'i', Ideal::Variant,
                 images(MorphismKind::PhiTilde, build_presentation(big, Variant::Tilde)));
    }
  }

  const Presentation& p_;
  const BatteryOptions& opts_;
  std::vector<NCPoly> frt_;
  std::map<std::pair<int, int>, std::unique_ptr<IdealSession>> sessions_;
  BatteryReport report_;
};

}  // namespace

BatteryReport battery(const Presentation& p, const BatteryOptions& opts) { return Runner(p, opts).run(); }

std::string battery_json(const std::vector<BatteryReport>& reports) {
  using nlohmann::json;
  json out;
  json arr = json::array();
  bool all = true;
  for (const auto& rep : reports) {
    json checks = json::array();
    std::vector<const CheckResult*> sorted;
    for (const auto& c : rep.checks) sorted.push_back(&c);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const CheckResult* a, const CheckResult* b) { return a->name < b->name; });
    for (const CheckResult* c : sorted) {
      json j = {{"name", c->name},
                {"group", c->group},
                {"series", c->series},
                {"N", c->N},
                {"variant", c->variant},
                {"bound", c->bound},
                {"verdict", verdict_name(c->verdict)},
                {"dimensions", {{"rows", c->rows}, {"cols", c->cols}}},
                {"elapsed_ms", c->elapsed_ms},
                {"certificate_digest", c->certificate_digest},
                {"role", c->role}};
      if (!c->witness.empty()) j["witness"] = c->witness;
      checks.push_back(j);
    }
    all = all && rep.all_passed();
    arr.push_back({{"presentation", rep.presentation}, {"passed", rep.all_passed()}, {"checks", checks}});
  }
  out["kind"] = "verify";
  out["reports"] = arr;
  out["passed"] = all;
  return out.dump(2);
}

}  // namespace qgx
