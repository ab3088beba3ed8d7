#include "qsplit/config.hpp"
#include "qsplit/run.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kSplittingRadius = 3, kVerification = 4 };

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw qsplit::ConfigError(0, "cannot open config file " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

qsplit::ParamMap parse_params(const std::vector<std::string>& kvs) {
  qsplit::ParamMap params;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw qsplit::ConfigError(0, "--param expects key=value, got " + kv);
    params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral exact-splitting solver for quadratic evolution equations"};
  app.require_subcommand(1);

  std::string preset, config_path, out_dir, scheme, seed_str;
  std::vector<std::string> params_kv;
  double dt = -1;
  long steps = -1;
  int pivot = 0;

  auto add_model_opts = [&](CLI::App* cmd) {
    cmd->add_option("--preset", preset, "preset name");
    cmd->add_option("--dt", dt, "time step");
    cmd->add_option("--param", params_kv, "model parameter override key=value");
    cmd->add_option("--pivot", pivot, "pivot axis override (1-based)");
  };

  CLI::App* plan_cmd = app.add_subcommand("plan", "print splitting coefficients");
  add_model_opts(plan_cmd);

  CLI::App* run_cmd = app.add_subcommand("run", "run an experiment");
  add_model_opts(run_cmd);
  run_cmd->add_option("--config", config_path, "config file");
  run_cmd->add_option("--steps", steps, "number of steps");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--seed", seed_str, "PRNG seed");
  run_cmd->add_option("--scheme", scheme, "time stepper: esqm|esr|strang|bw");

  CLI::App* verify_cmd = app.add_subcommand("verify", "verify identities and tables");
  add_model_opts(verify_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(plan_cmd)) {
      if (preset.empty()) throw qsplit::ConfigError(0, "plan requires --preset");
      const qsplit::Preset p = qsplit::make_preset(preset, parse_params(params_kv));
      const double use_dt = dt > 0 ? dt : p.default_dt;
      std::optional<int> piv;
      if (pivot > 0) piv = pivot;
      std::cout << qsplit::describe_plan(preset, use_dt, parse_params(params_kv), piv);
      return kOk;
    }

    if (app.got_subcommand(verify_cmd)) {
      if (preset.empty()) throw qsplit::ConfigError(0, "verify requires --preset");
      const qsplit::Preset p = qsplit::make_preset(preset, parse_params(params_kv));
      const double use_dt = dt >= 0 ? dt : p.default_dt;
      const qsplit::VerifyReport report =
          qsplit::verify_preset(preset, use_dt, parse_params(params_kv));
      std::cout << report.to_text();
      std::cout << (report.all_pass() ? "all checks passed\n"
                                      : "some checks failed\n");
      return kOk;  // report-only
    }

    // run
    qsplit::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = qsplit::parse_config(read_file(config_path));
    if (!preset.empty()) cfg.preset = preset;
    if (cfg.preset.empty()) throw qsplit::ConfigError(0, "run requires --preset or --config");
    if (dt > 0) cfg.dt = dt;
    if (steps >= 0) cfg.steps = static_cast<int>(steps);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!scheme.empty()) cfg.scheme = qsplit::scheme_from_string(scheme);
    if (!seed_str.empty()) cfg.seed = std::stoull(seed_str);
    for (const auto& [k, v] : parse_params(params_kv)) cfg.model_params[k] = v;
    if (pivot > 0) cfg.pivot = pivot;

    const qsplit::RunResult res = qsplit::run_experiment(std::move(cfg));
    std::printf("final time %.6g, %lld transforms, %lld multiplier passes\n",
                res.final_time, static_cast<long long>(res.stats.transforms),
                static_cast<long long>(res.stats.multiplier_passes));
    std::printf("exact-plan residual %.3e\n", res.plan_residual);
    if (res.stats.overflow_clamped)
      std::fprintf(stderr, "warning: decay multipliers clamped to zero (underflow)\n");
    std::printf("wrote %s\n", res.csv_path.c_str());
    if (!res.snapshot_path.empty()) std::printf("wrote %s\n", res.snapshot_path.c_str());
    return kOk;
  } catch (const qsplit::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfig;
  } catch (const qsplit::VerificationGateError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kVerification;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSplittingRadius;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
