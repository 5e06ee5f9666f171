#pragma once

// Per-case certificates and the command implementations behind the kslice
// tool. Commands return their output and exit code instead of printing, so
// they can be driven from tests.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kslice/exact.hpp"
#include "kslice/pairs.hpp"
#include "kslice/slice.hpp"

namespace kslice {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitPass = 0,
  kExitCaseFailed = 1,
  kExitInputError = 2,
  kExitNotFound = 3,
  kExitNonRegular = 4,
};

struct Certificate {
  std::string family;
  long p = 0;
  long q = 0;
  std::size_t rank_theta = 0;
  RatMatrix e;
  std::size_t nilpotency_index = 0;
  std::size_t centralizer_dim = 0;
  RatMatrix triple_f;
  RatMatrix triple_h;
  std::vector<std::pair<std::string, bool>> checks;
  int roundtrip_trials = 0;
  int roundtrip_passes = 0;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;

  bool passing() const;
};

/// Serialized with sorted keys; rationals as "a/b" strings.
std::string certificate_json(const Certificate& cert);

struct VerifyOptions {
  std::uint64_t seed = 0;
  int trials = 50;
  int conjugation_trials = 20;
  int equivariance_trials = 20;
  int jacobian_points = 10;
  SolverConfig solver;
};

/// Seed used inside one case, derived from the run seed and the case only,
/// so results do not depend on scheduling.
std::uint64_t case_seed(std::uint64_t seed, Family family, long p, long q);

/// Full pipeline for one pair. Throws ConstraintViolation for bad parameters.
Certificate run_verify(Family family, long p, long q, const VerifyOptions& opts);

struct CaseSpec {
  Family family;
  long p;
  long q;
};

/// GL 1<=q<=p<=gl_max; ORTH p in {q, q+1}, 1<=q, p<=o_max; SP even 2<=q<=p<=sp_max.
/// A value of 0 selects no cases for that family.
std::vector<CaseSpec> report_cases(long gl_max, long o_max, long sp_max);

/// Certificates in case order, computed on up to `jobs` threads.
std::vector<Certificate> run_report(const std::vector<CaseSpec>& cases, const VerifyOptions& opts,
                                    unsigned jobs);

struct CommandResult {
  int exit_code = kExitPass;
  std::string out;  // stdout payload
  std::string err;  // human-readable diagnostics
};

/// Coordinates of the slice point conjugate to X, with the regularity gate.
struct Canonical {
  RatVector coords;
  RatMatrix representative;
  InvariantVector invariants;
};
enum class CanonicalStatus { kOk, kNonRegular, kNotFound };
std::pair<CanonicalStatus, std::optional<Canonical>> canonicalize(const KostantSlice& slice,
                                                                  const RatMatrix& x,
                                                                  const SolverConfig& config = {});

/// Builds the slice at the pair's regular nilpotent.
KostantSlice standard_slice(Family family, long p, long q);

CommandResult cmd_verify(Family family, long p, long q, const VerifyOptions& opts);
CommandResult cmd_report(long gl_max, long o_max, long sp_max, const VerifyOptions& opts,
                         unsigned jobs);
CommandResult cmd_slice_rep(Family family, long p, long q, const std::string& invariants_text);
CommandResult cmd_canonicalize(Family family, long p, long q, const std::string& matrix_text);

/// {"error": kind, "message": text}
std::string error_json(const std::string& kind, const std::string& message);

}  // namespace kslice
