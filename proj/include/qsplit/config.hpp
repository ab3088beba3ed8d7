#pragma once

#include "qsplit/grid.hpp"
#include "qsplit/presets.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsplit {

struct ConfigError : std::runtime_error {
  ConfigError(int line_no, const std::string& what)
      : std::runtime_error("config line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
  int line;
};

enum class SnapshotPolicy { none, final_only, every_record };
enum class InitialKind { builtin, snapshot };

/// Run description: `[experiment]`, `[grid]`, `[model]`, `[output]` and
/// `[initial]` sections of key = value lines.
struct ExperimentConfig {
  std::string preset;
  Scheme scheme = Scheme::esqm;
  std::optional<double> dt;
  std::optional<int> steps;
  std::optional<double> final_time;
  std::uint64_t seed = 0;

  std::optional<GridSpec> grid;

  ParamMap model_params;
  std::optional<int> pivot;  // 1-based axis index

  std::string out_dir = "out";
  int record_stride = 1;
  std::vector<std::string> diagnostics;  // empty -> l2_norm only
  SnapshotPolicy snapshots = SnapshotPolicy::final_only;

  InitialKind initial = InitialKind::builtin;
  std::string initial_path;

  /// Normalized echo of every resolved value.
  std::string dump() const;
};

ExperimentConfig parse_config(const std::string& text);

/// Scheme validity, grid/preset dimension agreement, dt*steps vs final_time
/// within one step, diagnostic-column availability. Fills dt/steps defaults.
void validate_config(ExperimentConfig& cfg);

}  // namespace qsplit
