#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "zbrev/config.hpp"

namespace zbrev {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

struct RunOutputs {
  std::vector<std::filesystem::path> files;
};

/// Writes trace.csv (or scan.csv for fig4), revival.json when the window
/// covers T_R/2 at ZB resolution, and metadata.json with every resolved
/// parameter. Output bytes depend only on the resolved run.
RunOutputs run(const ResolvedRun& run, std::ostream& log);

enum class CheckStatus { pass, fail, skip };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

/// Invariant suite: caption regression, time-scale ordering, Taylor
/// consistency, unitarity, spectral and velocity oracles, revival dichotomy.
/// Oracle-dependent checks are reported as skipped when the oracle is off.
std::vector<CheckResult> verify(const RunConfig& config);

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks);

/// Recomputes revival ratios for fig1..fig3 from the matrix oracle and writes
/// the calibration file (threshold plus frozen ratios).
void calibrate(const std::filesystem::path& output, std::ostream& log, int threads = 0);

}  // namespace zbrev
