#pragma once

#include <map>
#include <string>

namespace restnorm {

// Empirically recorded constants backing every "bounded by a constant"
// assertion.  The table is stored as JSON in the repository; verify-suite
// regression-checks each entry to +-5% on every run, and --update-golden
// rewrites the file from a fresh scan together with a provenance stamp.
struct GoldenTable {
  // Ceiling for |log_q_exact - log_q_stirling| over the scan grid, per rank.
  std::map<int, double> stirling_envelope;
  // Ceiling for local_sum over the gap-scale scan, per rank.
  std::map<int, double> local_sum_ceiling;
  // Floor for lower_bound_sum over the gap-scale scan, per rank.
  std::map<int, double> lower_sum_floor;
  // Widening excess c(K) in the box bound (4 + c(K))^n, keyed by integer K.
  std::map<int, double> box_excess;
  // Ceiling for the stirling-mode interlacing-box integral, per rank.
  std::map<int, double> c_alpha_reference;
  // Ceiling for kernel_sum divided by its logarithmic bound.
  double kernel_sum_ratio = 0.0;
  // Slack in the smoothed second-moment floor: bound >= T * (1 - slack).
  double smoothed_slack = 0.0;

  std::string provenance;
};

// Relative slack applied to every recorded constant on regression.
inline constexpr double kGoldenSlack = 0.05;

// Reads or writes the table; both throw UsageError on a missing or
// malformed file / unwritable path.
GoldenTable load_golden(const std::string& path);
void save_golden(const GoldenTable& table, const std::string& path);

// RESTNORM_GOLDEN environment variable when set, else the path compiled in
// from the repository layout.
std::string default_golden_path();

}  // namespace restnorm
