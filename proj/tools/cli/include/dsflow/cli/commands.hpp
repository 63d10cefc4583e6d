#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace dsflow::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kValidationFailure = 3, kFlowAbort = 4 };

/// Column names of monitors.csv for dimension n.
std::string monitor_header(int n);
/// Column names of the slice table for dimension n.
std::string slice_table_header(int n);

/// Runs the flow described by the config; writes monitors.csv, summary.json and
/// snapshots under the configured (or overriding) output directory.
int cmd_run(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_override,
            std::ostream& out, std::ostream& err);

/// Residual table for the initial hypersurface.
int cmd_check(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

/// steps + 1 slices with r evenly spaced over [r_min, r_max].
int cmd_slice_table(int n, double r_min, double r_max, int steps, std::ostream& out, std::ostream& err);

int cmd_inequality(const std::filesystem::path& snapshot, std::ostream& out, std::ostream& err);

}  // namespace dsflow::cli
