// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qgx/classical.hpp"
#include "qgx/idealcheck.hpp"
#include "qgx/repthm.hpp"

using namespace qgx;

namespace {

constexpr double kRoundtripTol = 1e-10;
constexpr double kShiftInteriorTol = 1e-12;
constexpr double kShiftTwistedTol = 1e-11;
constexpr double kTorusTol = 1e-12;
constexpr int kLambdaGrid = 16;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    notes.push_back("FAILED " + why);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

Series S(SeriesTag t, int N) { return Series::make(t, N); }

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? sep : "") + v[k];
  return out;
}

// Battery runs are shared between criteria 4 to 8.
class BatteryCache {
 public:
  const BatteryReport& get(const Series& s, Variant v) {
    const std::string key = s.name() + "/" + variant_name(v);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    BatteryOptions o;
    o.diagnostics = false;
    return cache_.emplace(key, battery(build_presentation(s, v), o)).first->second;
  }

 private:
  std::map<std::string, BatteryReport> cache_;
};

// Every claim of the given groups must pass; diagnostics are ignored.
void require_groups(Outcome& o, const BatteryReport& r, const std::string& groups) {
  int total = 0, ok = 0;
  for (const auto& c : r.checks) {
    if (c.role != "claim" || groups.find(c.group[0]) == std::string::npos) continue;
    ++total;
    if (c.passed()) ++ok;
    else o.fail(r.presentation + " " + c.name + " (" + verdict_name(c.verdict) + ")");
  }
  if (total == 0) o.fail(r.presentation + ": no checks in groups " + groups);
  o.note(r.presentation + " " + groups + " " + std::to_string(ok) + "/" + std::to_string(total));
}

// ------------------------------------------------------------------ 1
Outcome braid(const std::vector<Series>& grid) {
  Outcome o;
  for (const auto& s : grid) {
    if (!braid_check(rhat(build_R(s)))) o.fail(s.name());
  }
  o.note(std::to_string(grid.size()) + " series exact");
  return o;
}

// ------------------------------------------------------------------ 2
Outcome kconsistency() {
  Outcome o;
  for (const auto& s : {S(SeriesTag::C, 2), S(SeriesTag::C, 4), S(SeriesTag::C, 6), S(SeriesTag::D, 4),
                        S(SeriesTag::D, 6), S(SeriesTag::B, 3), S(SeriesTag::B, 5)}) {
    const RTensor Rh = rhat(build_R(s));
    const RTensor K = ktensor_explicit(s);
    if (!(ktensor_from_rhat(Rh) == K)) o.fail(s.name() + " braid form differs from explicit");
    const KFit fit = k_polynomial_fit(s, Rh, K);
    if (!fit.in_span) o.fail(s.name() + " not in span{I, R̂, R̂²}");
    o.note(s.name() + (fit.unique ? "" : " (non-unique fit)") + " prefactors " +
           (fit.matches_displayed ? "match" : "mismatch"));
  }
  return o;
}

// ------------------------------------------------------------------ 3
// 𝒦V₁V₂ − V₁V₂𝒦 entrywise in the FRT ideal; the V₂V₁ ordering is reported.
Outcome kcommutation() {
  Outcome o;
  for (const auto& s : {S(SeriesTag::C, 2), S(SeriesTag::C, 4), S(SeriesTag::D, 4), S(SeriesTag::B, 3)}) {
    const int N = s.N;
    const RTensor K = ktensor_explicit(s);
    const auto frt = frt_relations(rhat(build_R(s)));
    SessionOptions so;
    so.degree_bound = 2;
    IdealSession session(frt, N, so);
    auto V = [N](int i, int j) { return NCPoly::gen(i, j, N); };
    int total = 0, ok = 0, literal_ok = 0;
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b)
        for (int c = 1; c <= N; ++c)
          for (int d = 1; d <= N; ++d) {
            NCPoly left(N), right(N), literal(N);
            for (int k = 1; k <= N; ++k)
              for (int l = 1; l <= N; ++l) {
                const RatFunc& kl = K.get(a, b, k, l);
                if (!kl.is_zero()) left += kl * (V(k, c) * V(l, d));
                const RatFunc& kr = K.get(k, l, c, d);
                if (!kr.is_zero()) {
                  right += kr * (V(a, k) * V(b, l));
                  literal += kr * (V(b, l) * V(a, k));
                }
              }
            ++total;
            if (session.contains(left - right)) ++ok;
            if (session.contains(left - literal)) ++literal_ok;
          }
    if (ok != total) o.fail(s.name() + " " + std::to_string(total - ok) + " entries not certified");
    o.note(s.name() + " " + std::to_string(ok) + "/" + std::to_string(total) + " (V2V1 ordering " +
           std::to_string(literal_ok) + "/" + std::to_string(total) + ")");
  }
  return o;
}

const std::vector<std::pair<Series, Variant>>& core_grid() {
  static const std::vector<std::pair<Series, Variant>> g = {
      {S(SeriesTag::C, 2), Variant::Plain}, {S(SeriesTag::C, 4), Variant::Plain}, {S(SeriesTag::D, 4), Variant::Plain},
      {S(SeriesTag::B, 3), Variant::Plain}, {S(SeriesTag::A, 2), Variant::Special}, {S(SeriesTag::A, 3), Variant::Special}};
  return g;
}

// ------------------------------------------------------------------ 4..6
Outcome groups(BatteryCache& cache, const std::string& g) {
  Outcome o;
  for (const auto& [s, v] : core_grid()) require_groups(o, cache.get(s, v), g);
  return o;
}

// ------------------------------------------------------------------ 7
Outcome star(BatteryCache& cache) {
  Outcome o;
  for (const auto& s : {S(SeriesTag::C, 2), S(SeriesTag::D, 4)}) require_groups(o, cache.get(s, Variant::Tilde), "h");
  return o;
}

// ------------------------------------------------------------------ 8
// Well-definedness from the battery; the square is compared as maps into the
// plain quotient (exact table equality is reported alongside).
Outcome morphisms(BatteryCache& cache) {
  Outcome o;
  for (const auto& s : {S(SeriesTag::C, 2), S(SeriesTag::D, 4)}) {
    require_groups(o, cache.get(s, Variant::Plain), "i");
    require_groups(o, cache.get(s, Variant::Tilde), "i");
    const auto defect = morphism_square_defect(s);
    std::vector<std::string> d;
    for (const auto& p : defect) d.push_back(p.to_string());
    o.note(s.name() + " generator tables " +
           (defect.empty() ? std::string("identical") : "differ by " + join(d, ", ") + ", zero in the quotient"));
  }
  return o;
}

// ------------------------------------------------------------------ 9
std::vector<Complex> lambda_grid() {
  std::vector<Complex> g;
  for (int k = 0; k < kLambdaGrid; ++k) g.push_back(std::polar(1.0, 2 * std::numbers::pi * (k + 0.25) / kLambdaGrid));
  return g;
}

double rep_distance(const NumericRep& a, const NumericRep& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.t.size(); ++k) d = std::max(d, operator_norm(a.t[k] - b.t[k]));
  return d;
}

Outcome representations() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  double worst_forward = 0, worst_roundtrip = 0;
  struct Case {
    Series s;
    Variant base;
    int middle_sign;
  };
  const std::vector<Case> cases = {{S(SeriesTag::C, 2), Variant::Plain, 1},   {S(SeriesTag::C, 4), Variant::Plain, 1},
                                   {S(SeriesTag::D, 4), Variant::Plain, 1},   {S(SeriesTag::D, 4), Variant::Special, 1},
                                   {S(SeriesTag::B, 3), Variant::Plain, 1},   {S(SeriesTag::B, 3), Variant::Plain, -1},
                                   {S(SeriesTag::A, 2), Variant::Special, 1}, {S(SeriesTag::A, 3), Variant::Special, 1}};
  std::vector<NumericRep> built;
  for (const auto& c : cases) {
    const RelationSystem sys = relation_system(c.s, c.base);
    const std::string name = c.s.name() + "/" + variant_name(c.base);
    if (!torus_symbolic_check(c.s, sys, true, c.middle_sign).exact) o.fail(name + " symbolic Z-side check");
    if (!torus_symbolic_check(c.s, sys, false, c.middle_sign).exact) o.fail(name + " symbolic A-side check");
    std::vector<double> th(static_cast<std::size_t>(c.s.tag == SeriesTag::A ? c.s.N - 1 : c.s.n()));
    for (auto& x : th) x = angle(rng);
    const NumericRep rep = torus_rep(c.s, c.base, torus_lambdas(c.s, th, c.middle_sign));
    built.push_back(rep);
    const auto zrel = sys.z_relations();
    for (const Complex lam : lambda_grid()) {
      const NumericRep tw = twist(rep, lam, sys.k);
      worst_forward = std::max(worst_forward, relation_residual(tw, zrel));
      const Untwisted u = untwist(tw, sys.k);
      worst_roundtrip = std::max(worst_roundtrip, rep_distance(twist(u.rep, u.lambda, sys.k), tw));
    }
    if (commutant_dim(rep) != 1) o.fail(name + " torus character commutant");
  }
  if (worst_forward > kTorusTol) o.fail("numeric forward residual");
  o.note("forward " + std::to_string(worst_forward));

  const RelationSystem c2 = relation_system(S(SeriesTag::C, 2), Variant::Plain);
  const NumericRep shift = shift_rep_usp2(10, 0.5);
  const double interior = relation_residual(shift, c2.a_relations());
  double twisted = 0;
  for (const Complex lam : lambda_grid()) {
    const NumericRep tw = twist(shift, lam, c2.k);
    twisted = std::max(twisted, relation_residual(tw, c2.z_relations()));
    const Untwisted u = untwist(tw, c2.k);
    worst_roundtrip = std::max(worst_roundtrip, rep_distance(twist(u.rep, u.lambda, c2.k), tw));
  }
  if (worst_roundtrip > kRoundtripTol) o.fail("roundtrip");
  o.note("roundtrip " + std::to_string(worst_roundtrip));

  const NumericRep doubled = direct_sum(built.front(), built.front());
  if (commutant_dim(doubled) != 4) o.fail("doubled commutant");
  bool caught = false;
  try {
    untwist(direct_sum(twist(built.front(), Complex(0, 1), 1), twist(built.front(), Complex(1, 0), 1)), 1);
  } catch (const ReducibleRep&) {
    caught = true;
  }
  if (!caught) o.fail("non-scalar mho not detected");
  o.note("commutants 1/" + std::to_string(commutant_dim(doubled)) + ", reducible detected");

  if (interior > kShiftInteriorTol) o.fail("shift interior");
  if (twisted > kShiftTwistedTol) o.fail("shift twisted");
  char buf[96];
  std::snprintf(buf, sizeof buf, "shift L=10 q=0.5 interior %.1e twisted %.1e", interior, twisted);
  o.note(buf);
  return o;
}

// ------------------------------------------------------------------ 10
Outcome classical_groups() {
  using namespace qgx::classical;
  Outcome o;
  double worst = 0;
  for (Group g : {Group::USp, Group::O, Group::SO, Group::USpT, Group::OT, Group::SOT})
    for (int n = 1; n <= 4; ++n) {
      SweepOptions opts;
      opts.trials = 100;
      opts.tol = 1e-10;
      opts.det_tol = 1e-8;
      opts.branch = g == Group::SOT;
      opts.closure = is_tilde(g);
      const SweepReport r = sweep(g, n, opts);
      worst = std::max({worst, r.max_residual, r.max_display_residual});
      if (!r.passed) o.fail(group_name(g) + std::to_string(n) + ": " + join(r.failures, "; "));
      if (g == Group::SOT && r.negative_branch != 0) o.fail("negative branch in " + group_name(g) + std::to_string(n));
    }
  o.note("24 sweeps x 100 samples, worst residual " + std::to_string(worst));
  return o;
}

// ------------------------------------------------------------------ 11
// A mutation is caught when the braid relation or a claim of groups a, b, d,
// e, f or g fails on the mutated data.
Outcome mutations() {
  Outcome o;
  BatteryOptions bo;
  bo.diagnostics = false;
  bo.retry = false;
  bo.groups = "abdefg";
  for (const auto& [s, v] : std::vector<std::pair<Series, Variant>>{{S(SeriesTag::A, 2), Variant::Special},
                                                                    {S(SeriesTag::B, 3), Variant::Plain},
                                                                    {S(SeriesTag::C, 2), Variant::Plain},
                                                                    {S(SeriesTag::D, 4), Variant::Plain}}) {
    std::mt19937_64 rng(1000 + s.N * 10 + static_cast<int>(s.tag));
    const RTensor Rh = rhat(build_R(s));
    std::vector<RTensor::Key> keys;
    for (const auto& [k, c] : Rh.entries()) keys.push_back(k);
    int caught = 0;
    std::vector<std::string> how;
    for (int m = 0; m < 3; ++m) {
      bool braid_fail = false;
      Presentation p;
      std::string what;
      if (m < 2) {
        const auto k = keys[std::uniform_int_distribution<std::size_t>(0, keys.size() - 1)(rng)];
        RTensor mut = Rh;
        mut.set(k[0], k[1], k[2], k[3], -Rh.get(k[0], k[1], k[2], k[3]));
        braid_fail = !braid_check(mut);
        PresentationOptions po;
        po.rhat_override = mut;
        p = build_presentation(s, v, po);
        what = "R";
      } else {
        p = build_presentation(s, v);
        const std::size_t r = std::uniform_int_distribution<std::size_t>(0, p.frt_count - 1)(rng);
        NCPoly& rel = p.relations[r];
        const auto& terms = rel.terms();
        auto it = terms.begin();
        std::advance(it, static_cast<long>(std::uniform_int_distribution<std::size_t>(0, terms.size() - 1)(rng)));
        const Word w = it->first;
        const RatFunc c = it->second;
        rel.add_term(w, RatFunc(-2) * c);
        what = "relation " + p.labels[r];
      }
      const BatteryReport rep = battery(p, bo);
      const bool battery_fail = !rep.all_passed();
      if (braid_fail || battery_fail) ++caught;
      how.push_back(what + (braid_fail ? " braid" : "") + (battery_fail ? " battery" : "") +
                    (braid_fail || battery_fail ? "" : " MISSED"));
    }
    if (caught != 3) o.fail(s.name() + " " + std::to_string(3 - caught) + " mutations undetected");
    o.note(s.name() + ": " + join(how, ", "));
  }
  return o;
}

}  // namespace

int main() {
  BatteryCache cache;
  const std::vector<Series> braid_grid = {S(SeriesTag::A, 2), S(SeriesTag::A, 3), S(SeriesTag::A, 4), S(SeriesTag::C, 2),
                                          S(SeriesTag::C, 4), S(SeriesTag::C, 6), S(SeriesTag::D, 4), S(SeriesTag::D, 6),
                                          S(SeriesTag::B, 3), S(SeriesTag::B, 5)};
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"braid relation", [&] { return braid(braid_grid); }},
      {"K consistency", [] { return kconsistency(); }},
      {"K commutation", [] { return kcommutation(); }},
      {"Vs identity", [&] { return groups(cache, "a"); }},
      {"centrality", [&] { return groups(cache, "b"); }},
      {"Hopf axioms", [&] { return groups(cache, "defg"); }},
      {"star structure", [&] { return star(cache); }},
      {"morphisms", [&] { return morphisms(cache); }},
      {"representation theorem", [] { return representations(); }},
      {"classical groups", [] { return classical_groups(); }},
      {"mutation sensitivity", [] { return mutations(); }},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    all = all && o.pass;
    std::printf("%s %2zu %-24s %7.1fs  %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), secs,
                join(o.notes, "; ").c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
