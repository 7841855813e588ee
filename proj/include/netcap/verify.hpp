#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace netcap {

struct VerifyCase {
  std::string id;
  std::string description;
  std::string claim;     // the identity or bound the case checks
  std::string relation;  // "==", "<=", "<"
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string status;  // pass | fail | skip
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  double tol_fn = 1e-9;     // function-equality comparisons
  double tol_norm = 1e-12;  // norm identities
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 42;
  double tol_fn = 1e-9;
  double tol_norm = 1e-12;
  std::vector<VerifyCase> cases;

  int failures() const;
  int passes() const;
  int skips() const;
};

// Individual suite names; "all" additionally accepted by run_verify.
const std::vector<std::string>& verify_suite_names();

// Runs the named suite (or every suite, in parallel, for "all"). Output is a
// pure function of (suite, options): randomness is drawn from per-suite
// named substreams of the seed, so reports are byte-stable run to run and
// adding a suite never perturbs another's cases.
VerifyReport run_verify(const std::string& suite, const VerifyOptions& options);

// Deterministic serializations. Volatile data (wall time) is intentionally
// not part of either format.
std::string verify_to_json(const VerifyReport& report);
std::string report_csv(const VerifyReport& report);

}  // namespace netcap
