#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "helix/friedrichs_check.hpp"
#include "helix/helix_system.hpp"
#include "helix/mms_oracle.hpp"
#include "helix/solver.hpp"

namespace helix::cli {

inline constexpr int kSchemaVersion = 1;

struct ZeroSource {};
struct GaussianSource {
  std::vector<GaussianCharge> charges;
};
struct MmsSource {
  std::string label;
};
using SourceSpec = std::variant<ZeroSource, GaussianSource, MmsSource>;

struct Tolerances {
  double tol_psd = 1e-10;
  double margin = 0.1;
  int radial_samples = 2048;
  int phi_samples = 720;
  int oracle_intervals = 16384;
  double oracle_disagreement = 1e-4;
  double cg_tolerance = 1e-10;
  int cg_max_iterations = 10000;
  bool force_iterative = false;
};

struct RunConfig {
  int schema = kSchemaVersion;
  DomainParams domain;
  std::optional<MultiplierParams> multiplier;  ///< empty means "auto"
  BoundarySpec boundary;
  std::string boundary_label;  ///< "sommerfeld+", "sommerfeld-" or "custom"
  SourceSpec source = ZeroSource{};
  int n_r = 65;
  int n_phi = 64;
  SolverChoice solver = SolverChoice::Modes;
  Tolerances tolerances;

  VerifyOptions verify_options() const;
  ChoiceOptions choice_options() const;
};

/// Throws ValidationError with a dotted field path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Round-trips through parse_config.
nlohmann::json to_json(const RunConfig& config);

nlohmann::json periodic_to_json(const PeriodicFunction& fn);

}  // namespace helix::cli
