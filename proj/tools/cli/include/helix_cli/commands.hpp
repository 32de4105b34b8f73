#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "helix_cli/config.hpp"

namespace helix::cli {

struct CommandResult {
  int exit_code = 0;
  nlohmann::json report;
  std::string text;  ///< human-readable rendering of `report`
};

enum ExitCode : int { kOk = 0, kValidation = 2, kCertification = 3, kSolver = 4 };

/// Certificates only; never throws CertificationError (failures land in the report).
CommandResult cmd_verify(const RunConfig& config);

/// Writes the nodal fields as CSV and a sibling "<stem>.meta.json".
CommandResult cmd_solve(const RunConfig& config, const std::filesystem::path& out);

/// Convergence table for source.mms, or every catalog entry when the source
/// is not manufactured. `out` requires a single entry.
CommandResult cmd_mms(const RunConfig& config, int levels, const std::optional<std::filesystem::path>& out);

/// Both solvers on the configured source and the manufactured catalog.
CommandResult cmd_compare(const RunConfig& config);

/// Throws CertificationError naming the first failing check.
CertifiedSystem certify_config(const RunConfig& config);

std::filesystem::path metadata_path(const std::filesystem::path& csv_path);

}  // namespace helix::cli
