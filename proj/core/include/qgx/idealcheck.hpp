// Ideal membership with replayable certificates, tensor-ideal membership, and
// the verification battery run over a presentation.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgx/eliminate.hpp"
#include "qgx/freealg.hpp"
#include "qgx/frtfamily.hpp"

namespace qgx {

class CertificateReplayError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct MembershipProblem {
  std::vector<NCPoly> generators;
  NCPoly target;
  int degree_bound = 2;
};

struct MembershipOptions {
  bool certificate = true;  // produce and replay a certificate
  std::size_t memory_budget = 0;
  std::optional<Grading> grading;
};

/// Tensor certificates carry which factor holds the ideal element.
struct TensorCertificateTerm {
  enum class Side { Left, Right } side = Side::Left;
  CertificateTerm term;  // left·g·right on the chosen side
  Word other;            // the plain word on the opposite side
};

struct MembershipReport {
  bool in_span = false;
  std::vector<CertificateTerm> certificate;
  std::vector<TensorCertificateTerm> tensor_certificate;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double elapsed_ms = 0;
  std::string digest;
  NCPoly residual;  // normal form (scalar targets)
};

MembershipReport membership(const MembershipProblem& p, const MembershipOptions& opts = {});

/// Membership of a tensor in I⊗A + A⊗I, each factor of degree ≤ bound.
MembershipReport tensor_membership(const TensorPoly& target, const std::vector<NCPoly>& generators, int N,
                                   int bound, const MembershipOptions& opts = {});

/// Same checks against an existing session (shares its eliminated blocks).
/// Certificates need a session built with track_history.
MembershipReport membership_in(IdealSession& session, const NCPoly& target, bool certificate);
MembershipReport tensor_membership_in(IdealSession& session, const TensorPoly& target, bool certificate);

TensorPoly replay_tensor_certificate(const std::vector<TensorCertificateTerm>& cert,
                                     const std::vector<NCPoly>& generators);

std::string membership_json(const MembershipReport& r);

// ------------------------------------------------------------------ battery

enum class Verdict { Certified, NotCertified, CounitExactPass, ExactFail };
std::string verdict_name(Verdict v);

struct CheckResult {
  std::string name;     // e.g. "centrality[1,2]"
  std::string group;    // battery letter "a".."i"
  std::string series;
  int N = 0;
  std::string variant;
  int bound = 0;
  Verdict verdict = Verdict::ExactFail;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double elapsed_ms = 0;
  std::string certificate_digest;
  /// "diagnostic" results are reported but never affect pass/fail.
  std::string role = "claim";
  std::string witness;  // normal form when not certified

  bool passed() const { return verdict == Verdict::Certified || verdict == Verdict::CounitExactPass; }
};

struct BatteryOptions {
  int degree_bound = 3;
  /// Groups to run; empty means all of a..i.
  std::string groups;
  bool retry = true;            // retry once at bound+1
  bool certificates = false;    // full certificates (slower) instead of trace digests
  std::size_t memory_budget = 0;
  /// Also report the permutation-determinant readings (never gate the verdict).
  bool diagnostics = true;
  /// Targets of higher degree are reported as not certified without solving.
  int max_bound = 6;
};

struct BatteryReport {
  std::string presentation;
  std::vector<CheckResult> checks;
  bool all_passed() const;  // claims only
};

BatteryReport battery(const Presentation& p, const BatteryOptions& opts = {});
std::string battery_json(const std::vector<BatteryReport>& reports);

}  // namespace qgx
