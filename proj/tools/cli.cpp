#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgx/classical.hpp"
#include "qgx/eliminate.hpp"
#include "qgx/frtfamily.hpp"
#include "qgx/idealcheck.hpp"
#include "qgx/repthm.hpp"
#include "qgx/rmatrix.hpp"

namespace qgx::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kDefaultBudget = 200'000'000;  // nonzeros in one elimination

struct Global {
  bool json = false;
  std::string out;
  int jobs = 1;
  std::uint64_t seed = 7;
  double tol = 1e-10;
  bool unsafe_large = false;
};

struct Outcome {
  bool passed = true;
  std::string text;
  json doc;
};

Series checked_series(const std::string& letter, int N, const Global& g) {
  if (letter.size() != 1) throw UsageError("--series takes one letter (a, b, c, d)");
  Series s;
  try {
    s = Series::parse(letter, N);
  } catch (const InvalidSeries& e) {
    throw UsageError(e.what());
  }
  if (!g.unsafe_large && N > rank_ceiling(s.letter()))
    throw UsageError(s.name() + " is above the rank ceiling N <= " + std::to_string(rank_ceiling(s.letter())) +
                     " (use --unsafe-large)");
  return s;
}

Variant checked_variant(const Series& s, const std::string& name) {
  Variant v;
  try {
    v = parse_variant(name);
  } catch (const InvalidVariant& e) {
    throw UsageError(e.what());
  }
  if (!variant_valid(s, v)) throw UsageError("variant " + name + " is not defined for series " + s.letter());
  return v;
}

// ------------------------------------------------------------------ rmatrix

struct RmatrixArgs {
  std::string series;
  int n = 0;
  bool dump = false;
  bool braid = false;
  bool kfit = false;
};

Outcome run_rmatrix(const RmatrixArgs& a, const Global& g) {
  const Series s = checked_series(a.series, a.n, g);
  const RTensor R = build_R(s);
  const RTensor Rh = rhat(R);
  Outcome o;
  std::ostringstream t;
  o.doc = {{"kind", "rmatrix"}, {"series", std::string(1, static_cast<char>(std::tolower(s.letter())))}, {"N", s.N}, {"nnz", R.nnz()}};
  t << "R-matrix " << s.name() << ": " << R.nnz() << " nonzero entries\n";
  if (a.braid) {
    const bool ok = braid_check(Rh);
    o.passed = o.passed && ok;
    o.doc["braid"] = ok;
    t << "braid relation: " << (ok ? "holds" : "FAILS") << "\n";
  }
  if (a.kfit && s.tag != SeriesTag::A) {
    const RTensor K = ktensor_explicit(s);
    const bool consistent = ktensor_from_rhat(Rh) == K;
    const KFit fit = k_polynomial_fit(s, Rh, K);
    o.passed = o.passed && consistent && fit.in_span;
    o.doc["k_consistent"] = consistent;
    o.doc["kfit"] = {{"in_span", fit.in_span},
                     {"unique", fit.unique},
                     {"a", fit.a.to_string()},
                     {"b", fit.b.to_string()},
                     {"c", fit.c.to_string()},
                     {"matches_displayed_prefactor", fit.matches_displayed}};
    t << "K from R-hat equals explicit K: " << (consistent ? "yes" : "NO") << "\n"
      << "K = a R^2 + b R + c I: " << (fit.in_span ? "a = " + fit.a.to_string() : std::string("not in span")) << "\n"
      << "displayed prefactor pattern: " << (fit.matches_displayed ? "matches" : "differs") << "\n";
  }
  if (a.dump) {
    o.doc["dump"] = R.dump();
    t << R.dump();
  }
  o.doc["passed"] = o.passed;
  o.text = t.str();
  return o;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string series;
  int n = 0;
  std::string variant = "plain";
  int bound = 3;
  std::string groups;
  bool all = false;
  int max_n = 4;
  bool no_diagnostics = false;
  bool certificates = false;
};

struct Job {
  Series series;
  Variant variant;
};

std::vector<Job> verify_grid(const VerifyArgs& a, const Global& g) {
  std::vector<Job> jobs;
  if (!a.all) {
    if (a.series.empty() || a.n == 0) throw UsageError("verify needs --series and --n, or --all");
    const Series s = checked_series(a.series, a.n, g);
    jobs.push_back({s, checked_variant(s, a.variant)});
    return jobs;
  }
  for (const char* letter : {"a", "b", "c", "d"}) {
    for (int N = 2; N <= a.max_n; ++N) {
      Series s;
      try {
        s = Series::parse(letter, N);
      } catch (const InvalidSeries&) {
        continue;
      }
      if (!g.unsafe_large && N > rank_ceiling(s.letter())) continue;
      for (Variant v : valid_variants(s)) jobs.push_back({s, v});
    }
  }
  return jobs;
}

Outcome run_verify(const VerifyArgs& a, const Global& g) {
  if (a.bound < 1) throw UsageError("--bound must be positive");
  const std::vector<Job> jobs = verify_grid(a, g);
  BatteryOptions bo;
  bo.degree_bound = a.bound;
  bo.groups = a.groups;
  bo.diagnostics = !a.no_diagnostics;
  bo.certificates = a.certificates;
  bo.memory_budget = g.unsafe_large ? 0 : kDefaultBudget;

  std::vector<BatteryReport> reports(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        reports[i] = battery(build_presentation(jobs[i].series, jobs[i].variant), bo);
      } catch (const MemoryBudgetExceeded& e) {
        errors[i] = e.what();
        reports[i].presentation = jobs[i].series.name() + "/" + variant_name(jobs[i].variant);
      }
    }
  };
  const int threads = std::max(1, std::min<int>(g.jobs, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Outcome o;
  o.doc = json::parse(battery_json(reports));
  std::ostringstream t;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const BatteryReport& r = reports[i];
    const bool ok = errors[i].empty() && r.all_passed();
    o.passed = o.passed && ok;
    std::size_t claims = 0, diags = 0;
    for (const auto& c : r.checks) (c.role == "claim" ? claims : diags)++;
    t << (ok ? "PASS " : "FAIL ") << r.presentation << ": " << claims << " claims";
    if (diags) t << ", " << diags << " diagnostics";
    t << "\n";
    if (!errors[i].empty()) {
      t << "  error: " << errors[i] << "\n";
      o.doc["reports"][i]["passed"] = false;
      o.doc["reports"][i]["error"] = errors[i];
    }
    for (const auto& c : r.checks) {
      if (c.passed()) continue;
      t << "  " << (c.role == "claim" ? "not passed" : "diagnostic") << " " << c.name << " (" << verdict_name(c.verdict)
        << ", bound " << c.bound << ")\n";
    }
  }
  o.doc["passed"] = o.passed;
  o.text = t.str();
  return o;
}

// ------------------------------------------------------------------ reps

struct RepsArgs {
  std::string model = "torus";
  std::string series = "c";
  int n = 2;
  std::string variant;
  int lambda_grid = 16;
  int trunc = 10;
  double q = 0.5;
  std::vector<double> theta;
  int middle_sign = 1;
  bool demo = false;
};

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

double rep_distance(const NumericRep& a, const NumericRep& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.t.size(); ++i) d = std::max(d, operator_norm(a.t[i] - b.t[i]));
  if (a.mho && b.mho) d = std::max(d, operator_norm(*a.mho - *b.mho));
  return d;
}

std::vector<Complex> lambda_grid(int K) {
  std::vector<Complex> out;
  for (int k = 0; k < K; ++k) out.push_back(std::polar(1.0, 2 * std::numbers::pi * (k + 0.5) / K));
  return out;
}

Outcome run_reps_torus(const RepsArgs& a, const Global& g) {
  const Series s = checked_series(a.series, a.n, g);
  const std::string vname = a.variant.empty() ? (s.tag == SeriesTag::A ? "special" : "plain") : a.variant;
  const Variant v = checked_variant(s, vname);
  if (v != Variant::Plain && v != Variant::Special) throw UsageError("reps takes a plain or special base variant");
  RelationSystem sys;
  try {
    sys = relation_system(s, v);
  } catch (const RelationDegreeError& e) {
    throw UsageError(std::string("no extension for this base: ") + e.what());
  }
  const int angles = s.tag == SeriesTag::A ? s.N - 1 : s.n();
  std::vector<double> th = a.theta;
  if (th.empty()) {
    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
    for (int i = 0; i < angles; ++i) th.push_back(u(rng));
  }
  if (static_cast<int>(th.size()) != angles)
    throw UsageError("--theta needs " + std::to_string(angles) + " angle(s) for " + s.name());

  const NumericRep base = torus_rep(s, v, torus_lambdas(s, th, a.middle_sign), a.q);
  const auto arel = sys.a_relations();
  const auto zrel = sys.z_relations();
  Outcome o;
  std::ostringstream t;
  const double a_res = relation_residual(base, arel);
  double worst = a_res;
  json rows = json::array();
  t << "torus character of " << s.name() << " " << vname << ", k = " << sys.k << ", A-residual " << a_res << "\n";
  t << "  lambda                         Z-residual   roundtrip\n";
  for (const Complex lam : lambda_grid(a.lambda_grid)) {
    const NumericRep tw = twist(base, lam, sys.k);
    const double zres = relation_residual(tw, zrel);
    const Untwisted u = untwist(tw, sys.k, g.tol);
    const double rt = std::max(rep_distance(twist(u.rep, u.lambda, sys.k), tw), relation_residual(u.rep, arel));
    worst = std::max({worst, zres, rt});
    rows.push_back({{"lambda", cjson(lam)}, {"z_residual", zres}, {"roundtrip", rt}, {"recovered", cjson(u.lambda)}});
    char buf[128];
    std::snprintf(buf, sizeof buf, "  (%+.6f, %+.6f)   %.3e    %.3e\n", lam.real(), lam.imag(), zres, rt);
    t << buf;
  }
  const SymbolicCheck sa = torus_symbolic_check(s, sys, false, a.middle_sign);
  const SymbolicCheck sz = torus_symbolic_check(s, sys, true, a.middle_sign);
  const int comm = commutant_dim(base);
  const int comm2 = commutant_dim(direct_sum(base, base));
  bool reducible = false;
  try {
    untwist(direct_sum(twist(base, std::polar(1.0, 0.4), sys.k), twist(base, std::polar(1.0, 1.3), sys.k)), sys.k,
            g.tol);
  } catch (const ReducibleRep&) {
    reducible = true;
  }
  o.passed = worst <= g.tol && sa.exact && sz.exact && comm == 1 && comm2 == 4 && reducible;
  std::vector<std::string> failing = sa.failing;
  failing.insert(failing.end(), sz.failing.begin(), sz.failing.end());
  o.doc = {{"kind", "reps"},
           {"model", "torus"},
           {"series", std::string(1, static_cast<char>(std::tolower(s.letter())))},
           {"N", s.N},
           {"variant", vname},
           {"k", sys.k},
           {"qval", a.q},
           {"theta", th},
           {"a_residual", a_res},
           {"rows", rows},
           {"symbolic", {{"a_exact", sa.exact}, {"z_exact", sz.exact}, {"failing", failing}}},
           {"commutant_dim", comm},
           {"doubled_commutant_dim", comm2},
           {"reducible_detected", reducible},
           {"max_residual", worst},
           {"tol", g.tol},
           {"passed", o.passed}};
  if (a.demo) o.doc["demo"] = {{"base", json::parse(rep_json(base))},
                               {"twisted", json::parse(rep_json(twist(base, std::polar(1.0, 0.7), sys.k)))}};
  t << "symbolic check: A " << (sa.exact ? "exact" : "FAILS") << ", Z " << (sz.exact ? "exact" : "FAILS") << "\n"
    << "commutant dimension " << comm << " (doubled " << comm2 << ")\n"
    << "non-scalar mho detected on the mixed direct sum: " << (reducible ? "yes" : "NO") << "\n";
  if (a.demo) t << rep_json(base) << "\n";
  o.text = t.str();
  return o;
}

Outcome run_reps_shift(const RepsArgs& a, const Global& g) {
  const NumericRep rep = shift_rep_usp2(a.trunc, a.q);
  const RelationSystem sys = relation_system(Series::make(SeriesTag::C, 2), Variant::Plain);
  const auto arel = sys.a_relations();
  const auto zrel = sys.z_relations();
  const auto grid = lambda_grid(std::max(1, a.lambda_grid));
  std::vector<NumericRep> twisted;
  for (const Complex lam : grid) twisted.push_back(twist(rep, lam, sys.k));

  Outcome o;
  std::ostringstream t;
  t << "USp_q(2) shift model, L = " << a.trunc << ", q = " << a.q << ", interior columns " << rep.interior_lo << ".."
    << rep.interior_hi << "\n";
  json table = json::array();
  double worst_a = 0, worst_z = 0;
  for (const auto& r : arel) {
    const double res = relation_residual(rep, r);
    worst_a = std::max(worst_a, res);
    table.push_back({{"label", r.label}, {"side", "A"}, {"residual", res}});
    char buf[160];
    std::snprintf(buf, sizeof buf, "  A %-28s %.3e\n", r.label.c_str(), res);
    t << buf;
  }
  for (const auto& r : zrel) {
    double res = 0;
    for (const auto& tw : twisted) res = std::max(res, relation_residual(tw, r));
    worst_z = std::max(worst_z, res);
    table.push_back({{"label", r.label}, {"side", "Z"}, {"residual", res}});
    char buf[160];
    std::snprintf(buf, sizeof buf, "  Z %-28s %.3e\n", r.label.c_str(), res);
    t << buf;
  }
  double rt = 0;
  for (std::size_t i = 0; i < twisted.size(); ++i) {
    const Untwisted u = untwist(twisted[i], sys.k, g.tol);
    rt = std::max(rt, rep_distance(twist(u.rep, u.lambda, sys.k), twisted[i]));
  }
  o.passed = std::max({worst_a, worst_z, rt}) <= g.tol;
  o.doc = {{"kind", "reps"},        {"model", "shift-usp2"}, {"series", "c"},      {"N", 2},
           {"variant", "plain"},    {"k", sys.k},            {"qval", a.q},        {"trunc", a.trunc},
           {"interior_range", {rep.interior_lo, rep.interior_hi}},
           {"relation_table", table}, {"a_residual", worst_a}, {"z_residual", worst_z},
           {"roundtrip", rt},       {"max_residual", std::max({worst_a, worst_z, rt})},
           {"tol", g.tol},          {"passed", o.passed}};
  if (a.demo) o.doc["demo"] = {{"base", json::parse(rep_json(rep))}};
  t << "max interior residual " << worst_a << ", twisted " << worst_z << ", roundtrip " << rt << "\n";
  o.text = t.str();
  return o;
}

Outcome run_reps(const RepsArgs& a, const Global& g) {
  if (a.lambda_grid < 1) throw UsageError("--lambda-grid must be positive");
  if (!(a.q > 0 && a.q < 1)) throw UsageError("--q must lie in (0, 1)");
  if (a.middle_sign != 1 && a.middle_sign != -1) throw UsageError("--middle-sign is 1 or -1");
  if (a.model == "torus") return run_reps_torus(a, g);
  if (a.model == "shift-usp2") {
    if (a.trunc < 3) throw UsageError("--trunc must be at least 3");
    return run_reps_shift(a, g);
  }
  throw UsageError("unknown model '" + a.model + "' (torus, shift-usp2)");
}

// ------------------------------------------------------------------ classical

struct ClassicalArgs {
  std::string group;
  int n = 2;
  int trials = 100;
  bool branch = false;
  bool closure = false;
};

Outcome run_classical(const ClassicalArgs& a, const Global& g) {
  classical::Group grp;
  try {
    grp = classical::parse_group(a.group);
  } catch (const classical::ClassicalError& e) {
    throw UsageError(e.what());
  }
  if (a.n < 1 || (!g.unsafe_large && a.n > 8)) throw UsageError("--n must lie in 1..8");
  if (a.trials < 1) throw UsageError("--trials must be positive");
  classical::SweepOptions so;
  so.trials = a.trials;
  so.seed = g.seed;
  so.tol = g.tol;
  so.branch = a.branch;
  so.closure = a.closure;
  const classical::SweepReport r = classical::sweep(grp, a.n, so);
  Outcome o;
  o.passed = r.passed;
  o.doc = json::parse(classical::sweep_json(r));
  std::ostringstream t;
  t << (r.passed ? "PASS " : "FAIL ") << r.group << " n=" << r.n << " (" << r.trials << " samples, seed " << r.seed
    << ")\n"
    << "  form residual " << r.max_residual << ", unitarity " << r.max_unitarity << ", |lambda| deviation "
    << r.max_lambda_modulus_dev << ", displays " << r.max_display_residual << "\n";
  if (r.positive_branch + r.negative_branch > 0)
    t << "  branches: " << r.positive_branch << " positive, " << r.negative_branch << " negative\n";
  if (a.closure)
    t << "  closure residual " << r.max_closure_residual << ", multiplicativity " << r.max_multiplicativity << "\n";
  for (const auto& f : r.failures) t << "  " << f << "\n";
  o.text = t.str();
  return o;
}

// ------------------------------------------------------------------ report

Outcome run_report(const std::vector<std::string>& files) {
  if (files.empty()) throw UsageError("report needs at least one JSON file");
  Outcome o;
  json inputs = json::array();
  std::ostringstream t;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw UsageError("cannot read " + f);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError(f + ": " + e.what());
    }
    if (!doc.contains("kind") || !doc.contains("passed")) throw UsageError(f + " is not a qgx report");
    const bool ok = doc["passed"].get<bool>();
    o.passed = o.passed && ok;
    inputs.push_back({{"path", f}, {"kind", doc["kind"]}, {"passed", ok}});
    t << (ok ? "PASS " : "FAIL ") << doc["kind"].get<std::string>() << "  " << f << "\n";
  }
  o.doc = {{"kind", "report"}, {"inputs", inputs}, {"passed", o.passed}};
  o.text = t.str();
  return o;
}

void emit(const Outcome& o, const Global& g, std::ostream& out) {
  const std::string body = g.json ? o.doc.dump(2) + "\n" : o.text;
  if (g.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << body;
}

}  // namespace

int rank_ceiling(char series) {
  switch (series) {
    case 'A': case 'a': return 4;
    case 'B': case 'b': return 5;
    default: return 6;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum matrix group toolkit: R-matrices, ideal batteries, representations, classical groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_flag("--json", g.json, "Emit JSON reports");
  app.add_option("--out", g.out, "Write the report to a file");
  app.add_option("--jobs", g.jobs, "Concurrent presentations in verify --all")->check(CLI::Range(1, 64));
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--tol", g.tol, "Numeric tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--unsafe-large", g.unsafe_large, "Lift the rank ceiling and the elimination memory budget");

  RmatrixArgs ra;
  auto* rm = app.add_subcommand("rmatrix", "Build an R-matrix and check it");
  rm->add_option("--series", ra.series, "a, b, c or d")->required();
  rm->add_option("--n", ra.n, "Matrix size N")->required();
  rm->add_flag("--dump", ra.dump, "Print the sparse tensor");
  rm->add_flag("--braid", ra.braid, "Check the braid relation");
  rm->add_flag("--kfit", ra.kfit, "Check the K tensor (series B, C, D)");

  VerifyArgs va;
  auto* ve = app.add_subcommand("verify", "Run the ideal-membership battery on presentations");
  ve->add_option("--series", va.series, "a, b, c or d");
  ve->add_option("--n", va.n, "Matrix size N");
  ve->add_option("--variant", va.variant, "plain, special, tilde or special-tilde");
  ve->add_option("--bound", va.bound, "Degree bound");
  ve->add_option("--groups", va.groups, "Battery groups to run, e.g. abc");
  ve->add_flag("--all", va.all, "Run the whole supported grid");
  ve->add_option("--max-n", va.max_n, "Largest N in --all");
  ve->add_flag("--no-diagnostics", va.no_diagnostics, "Skip the determinant-reading diagnostics");
  ve->add_flag("--certificates", va.certificates, "Build and replay full certificates");

  RepsArgs pa;
  auto* re = app.add_subcommand("reps", "Representations of the extension: twists, roundtrips, residuals");
  re->add_option("--model", pa.model, "torus or shift-usp2");
  re->add_option("--series", pa.series, "a, b, c or d");
  re->add_option("--n", pa.n, "Matrix size N");
  re->add_option("--variant", pa.variant, "Base variant: plain or special");
  re->add_option("--lambda-grid", pa.lambda_grid, "Number of twist parameters on the unit circle");
  re->add_option("--trunc", pa.trunc, "Truncation level of the shift model");
  re->add_option("--q", pa.q, "Numeric q in (0, 1)");
  re->add_option("--theta", pa.theta, "Torus angles");
  re->add_option("--middle-sign", pa.middle_sign, "Middle entry of a series B torus character");
  re->add_flag("--demo", pa.demo, "Include the representation matrices");

  ClassicalArgs ca;
  auto* cl = app.add_subcommand("classical", "Seeded sweeps over the classical groups");
  cl->add_option("--group", ca.group, "usp, o, so, uspt, ot or sot")->required();
  cl->add_option("--n", ca.n, "Rank parameter n");
  cl->add_option("--trials", ca.trials, "Number of samples");
  cl->add_flag("--branch", ca.branch, "Classify determinant branches");
  cl->add_flag("--closure", ca.closure, "Check products, inverses and lambda multiplicativity");

  std::vector<std::string> files;
  auto* rp = app.add_subcommand("report", "Summarize JSON reports");
  rp->add_option("files", files, "Report files");

  std::vector<std::string> argv_store = args;
  std::reverse(argv_store.begin(), argv_store.end());
  try {
    app.parse(argv_store);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Outcome o;
    if (*rm) o = run_rmatrix(ra, g);
    else if (*ve) o = run_verify(va, g);
    else if (*re) o = run_reps(pa, g);
    else if (*cl) o = run_classical(ca, g);
    else o = run_report(files);
    emit(o, g, out);
    return o.passed ? kOk : kCheckFailed;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

}  // namespace qgx::cli
