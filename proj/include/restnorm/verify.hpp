#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "restnorm/golden.hpp"

namespace restnorm {

struct VerifyConfig {
  std::uint64_t seed = 1;
  // Per-rank sample budget for the large randomized scans.  Monte Carlo
  // volume runs use ten times this count.
  std::int64_t samples = 100'000;
  int n_max = 6;
  // Empty means default_golden_path().
  std::string golden_path;
  bool update_golden = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Individual invariant suites.  Checks that involve a recorded constant take
// the stored table (null skips the regression comparison) and an optional
// output table that collects freshly observed constants.
CheckResult check_exponent_nonnegative(const VerifyConfig& cfg);
CheckResult check_membership_equivalence(const VerifyConfig& cfg);
CheckResult check_cell_covering(const VerifyConfig& cfg);
CheckResult check_volume_triple(const VerifyConfig& cfg);
CheckResult check_projection_identity(const VerifyConfig& cfg);
CheckResult check_surrogate_sandwich(const VerifyConfig& cfg);
CheckResult check_weight_envelope(const VerifyConfig& cfg,
                                  const GoldenTable* recorded, GoldenTable* fresh);
CheckResult check_kernel_sum_ratio(const VerifyConfig& cfg,
                                   const GoldenTable* recorded, GoldenTable* fresh);
CheckResult check_bounded_sums(const VerifyConfig& cfg,
                               const GoldenTable* recorded, GoldenTable* fresh);
CheckResult check_hahb_bound(const VerifyConfig& cfg);
CheckResult check_second_moment_floor(const VerifyConfig& cfg,
                                      const GoldenTable* recorded,
                                      GoldenTable* fresh);
CheckResult check_c_alpha_bound(const VerifyConfig& cfg,
                                const GoldenTable* recorded, GoldenTable* fresh);

// Runs every check above.  Without update_golden the stored table drives the
// +-5% regressions; with it the freshly observed constants are written back
// to the golden path with a provenance stamp and regressions are skipped.
std::vector<CheckResult> run_verify_suite(const VerifyConfig& cfg);

}  // namespace restnorm
