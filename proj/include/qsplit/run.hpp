#pragma once

#include "qsplit/config.hpp"
#include "qsplit/diagnostics.hpp"
#include "qsplit/presets.hpp"

#include <string>

namespace qsplit {

/// Exact-plan gate failure before stepping (process exit code 4).
struct VerificationGateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunResult {
  DiagnosticSeries series;
  Field final_field;
  double final_time = 0;
  RunStats stats;
  double plan_residual = 0;  // matrix residual of the exact plan, if any
  std::string csv_path, snapshot_path;
};

/// Builds the model, checks exact plans against the matrix identity, steps,
/// records diagnostics every stride and writes CSV plus snapshots.
RunResult run_experiment(ExperimentConfig cfg);

struct VerifyCheck {
  std::string name;
  double value = 0, bound = 0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
  std::string to_text() const;
};

/// Report-only verification: matrix identities of the preset's exact plan,
/// the spectrum checks of the periodic model, and the embedded coefficient
/// table regressions.
VerifyReport verify_preset(const std::string& preset, double dt,
                           const ParamMap& params = {});

/// Printable coefficient tables of the preset's exact plan at dt.
std::string describe_plan(const std::string& preset, double dt,
                          const ParamMap& params = {},
                          std::optional<int> pivot = std::nullopt);

}  // namespace qsplit
