#include "qgx/idealcheck.hpp"

#include <chrono>
#include <cstdio>

#include "json.hpp"

namespace qgx {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t fnv(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

std::string certificate_digest(const std::vector<CertificateTerm>& cert) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& t : cert) {
    h = fnv(h, word_to_string(t.left));
    h = fnv(h, std::to_string(t.generator));
    h = fnv(h, word_to_string(t.right));
    h = fnv(h, t.coeff.to_string());
  }
  return hex64(h);
}

void fill_dims(MembershipReport& r, const IdealSession& s) {
  const SessionStats st = s.stats();
  r.rows = st.rows;
  r.cols = st.cols;
}

// Groups a tensor by one side: key word → polynomial in the other factor.
std::map<Word, NCPoly> group_by(const TensorPoly& t, bool by_right, int N) {
  std::map<Word, NCPoly> out;
  for (const auto& [k, c] : t.terms()) {
    const Word& key = by_right ? k.second : k.first;
    const Word& val = by_right ? k.first : k.second;
    auto it = out.try_emplace(key, NCPoly(N)).first;
    it->second.add_term(val, c);
  }
  return out;
}

}  // namespace

MembershipReport membership_in(IdealSession& session, const NCPoly& target, bool certificate) {
  const auto t0 = Clock::now();
  MembershipReport r;
  r.residual = session.normal_form(target);
  r.in_span = r.residual.is_zero();
  if (r.in_span && certificate) {
    auto cert = session.certificate(target);
    if (!cert) throw CertificateReplayError("normal form vanished but no certificate was produced");
    if (!(replay_certificate(*cert, session.generators()) == target))
      throw CertificateReplayError("certificate replay does not reconstruct the target");
    r.certificate = std::move(*cert);
    r.digest = certificate_digest(r.certificate);
  } else {
    r.digest = session.trace_digest(target);
  }
  fill_dims(r, session);
  r.elapsed_ms = ms_since(t0);
  return r;
}

MembershipReport membership(const MembershipProblem& p, const MembershipOptions& opts) {
  if (p.degree_bound < p.target.degree())
    throw DegreeBoundError("degree bound " + std::to_string(p.degree_bound) + " is below the target degree " +
                           std::to_string(p.target.degree()));
  int N = p.target.alphabet();
  for (const auto& g : p.generators) {
    if (g.is_zero()) throw std::invalid_argument("zero generator");
    if (N == 0) N = g.alphabet();
    if (g.alphabet() != 0 && g.alphabet() != N) throw AlphabetMismatch("generator alphabets differ");
  }
  if (N == 0) N = 1;
  SessionOptions so;
  so.degree_bound = p.degree_bound;
  so.track_history = opts.certificate;
  so.memory_budget = opts.memory_budget;
  so.grading = opts.grading;
  IdealSession session(p.generators, N, so);
  return membership_in(session, p.target, opts.certificate);
}

MembershipReport tensor_membership_in(IdealSession& session, const TensorPoly& target, bool certificate) {
  const auto t0 = Clock::now();
  const int N = session.N();
  MembershipReport r;
  std::uint64_t h = 1469598103934665603ULL;
  // Reduce the left factor, then the right factor of what remains.
  TensorPoly rest;
  for (auto& [right, left] : group_by(target, true, N)) {
    NCPoly nf = session.normal_form(left);
    h = fnv(h, session.trace_digest(left));
    if (certificate) {
      auto cert = session.certificate(left - nf);
      if (!cert) throw CertificateReplayError("left reduction has no certificate");
      for (auto& t : *cert)
        r.tensor_certificate.push_back({TensorCertificateTerm::Side::Left, std::move(t), right});
    }
    for (const auto& [w, c] : nf.terms()) rest.add_term(w, right, c);
  }
  TensorPoly residual;
  for (auto& [left, right] : group_by(rest, false, N)) {
    NCPoly nf = session.normal_form(right);
    h = fnv(h, session.trace_digest(right));
    if (certificate) {
      auto cert = session.certificate(right - nf);
      if (!cert) throw CertificateReplayError("right reduction has no certificate");
      for (auto& t : *cert)
        r.tensor_certificate.push_back({TensorCertificateTerm::Side::Right, std::move(t), left});
    }
    for (const auto& [w, c] : nf.terms()) residual.add_term(left, w, c);
  }
  r.in_span = residual.is_zero();
  if (r.in_span && certificate) {
    if (!(replay_tensor_certificate(r.tensor_certificate, session.generators()) == target))
      throw CertificateReplayError("tensor certificate replay does not reconstruct the target");
  }
  if (!r.in_span) r.tensor_certificate.clear();
  if (!r.in_span) {
    // Report the residual through its left factors for witnesses.
    NCPoly flat(N);
    for (const auto& [k, c] : residual.terms()) flat.add_term(k.first * k.second, c);
    r.residual = flat;
  }
  r.digest = hex64(h);
  fill_dims(r, session);
  r.elapsed_ms = ms_since(t0);
  return r;
}

MembershipReport tensor_membership(const TensorPoly& target, const std::vector<NCPoly>& generators, int N,
                                   int bound, const MembershipOptions& opts) {
  for (const auto& [k, c] : target.terms())
    if (k.first.degree() > bound || k.second.degree() > bound)
      throw DegreeBoundError("tensor factor degree exceeds bound " + std::to_string(bound));
  SessionOptions so;
  so.degree_bound = bound;
  so.track_history = opts.certificate;
  so.memory_budget = opts.memory_budget;
  so.grading = opts.grading;
  IdealSession session(generators, N, so);
  return tensor_membership_in(session, target, opts.certificate);
}

TensorPoly replay_tensor_certificate(const std::vector<TensorCertificateTerm>& cert,
                                     const std::vector<NCPoly>& generators) {
  TensorPoly out;
  for (const auto& t : cert) {
    const NCPoly& g = generators.at(static_cast<std::size_t>(t.term.generator));
    const NCPoly p = NCPoly::monomial(t.term.left, t.term.coeff) * g * NCPoly::monomial(t.term.right, RatFunc(1));
    const NCPoly o = NCPoly::monomial(t.other, RatFunc(1));
    out += t.side == TensorCertificateTerm::Side::Left ? TensorPoly::pure(p, o) : TensorPoly::pure(o, p);
  }
  return out;
}

std::string membership_json(const MembershipReport& r) {
  using nlohmann::json;
  json j;
  j["in_span"] = r.in_span;
  j["dimensions"] = {{"rows", r.rows}, {"cols", r.cols}};
  j["elapsed_ms"] = r.elapsed_ms;
  j["digest"] = r.digest;
  json c = json::array();
  for (const auto& t : r.certificate)
    c.push_back({{"left", word_to_string(t.left)},
                 {"generator", t.generator},
                 {"right", word_to_string(t.right)},
                 {"coeff", t.coeff.to_string()}});
  for (const auto& t : r.tensor_certificate)
    c.push_back({{"side", t.side == TensorCertificateTerm::Side::Left ? "left" : "right"},
                 {"left", word_to_string(t.term.left)},
                 {"generator", t.term.generator},
                 {"right", word_to_string(t.term.right)},
                 {"other", word_to_string(t.other)},
                 {"coeff", t.term.coeff.to_string()}});
  j["certificate"] = c;
  if (!r.in_span) j["residual"] = r.residual.to_string();
  return j.dump(2);
}

}  // namespace qgx
