#include "qsplit/run.hpp"

#include "qsplit/kinetic.hpp"
#include "qsplit/matfun.hpp"
#include "qsplit/shear.hpp"
#include "qsplit/snapshot.hpp"
#include "qsplit/triangular.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qsplit {

namespace {

constexpr double kPi = std::numbers::pi;

double exact_plan_residual(const Preset& preset, Scheme scheme, double dt) {
  switch (preset.family) {
    case ModelFamily::transport:
      if (scheme == Scheme::esr)
        return verify_plan(quadratic_plan(preset, dt), preset.symbol(), dt).matrix;
      return 0.0;
    case ModelFamily::kfp:
    case ModelFamily::fp:
      if (scheme == Scheme::esqm) {
        const PlanResidual r = verify_plan(quadratic_plan(preset, dt), preset.symbol(), dt);
        return std::max(r.matrix, r.scalar);
      }
      return 0.0;
    case ModelFamily::qm: {
      if (scheme == Scheme::esqm)
        return verify_plan(quadratic_plan(preset, dt), preset.symbol(),
                           preset.time_scale * dt)
            .matrix;
      if (scheme == Scheme::esr) {
        const Eigen::MatrixXd mrot = -preset.time_scale * preset.B;
        return verify_plan(shear_factorize(mrot, dt).to_plan(),
                           transport_symbol(mrot), dt)
            .matrix;
      }
      return 0.0;
    }
  }
  return 0.0;
}

std::string format_matrix(const Eigen::MatrixXd& m) {
  std::string out;
  char buf[64];
  for (int r = 0; r < m.rows(); ++r) {
    out += "    ";
    for (int c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "% 19.15f", m(r, c));
      out += buf;
      if (c + 1 < m.cols()) out += "  ";
    }
    out += "\n";
  }
  return out;
}

}  // namespace

RunResult run_experiment(ExperimentConfig cfg) {
  validate_config(cfg);
  Preset preset = make_preset(cfg.preset, cfg.model_params);
  if (cfg.pivot) preset.pivot = *cfg.pivot - 1;
  const GridSpec grid = cfg.grid ? *cfg.grid : preset.default_grid;
  const double dt = *cfg.dt;
  const int steps = *cfg.steps;

  RunResult res;
  res.plan_residual = exact_plan_residual(preset, cfg.scheme, dt);
  if (res.plan_residual > 1e-10)
    throw VerificationGateError("exact-plan matrix residual " +
                                std::to_string(res.plan_residual) +
                                " exceeds 1e-10");

  Field psi;
  if (cfg.initial == InitialKind::builtin) {
    psi = preset.initial(grid, cfg.seed);
  } else {
    Snapshot snap = read_snapshot(cfg.initial_path);
    if (!(snap.field.spec == grid))
      throw std::runtime_error("initial snapshot grid does not match the run grid");
    psi = std::move(snap.field);
  }

  Stepper stepper(grid, build_stages(preset, cfg.scheme, dt));
  PartialFourier& fft = stepper.executor().fft();

  DiagnosticSeries series;
  series.set_columns(cfg.diagnostics);

  auto record = [&](double t) {
    stepper.finish(psi);
    std::vector<double> row;
    row.reserve(cfg.diagnostics.size());
    for (const auto& col : cfg.diagnostics) {
      if (col == "l2_norm") row.push_back(psi.norm());
      else if (col == "mass") row.push_back(mass(psi));
      else if (col == "energy") row.push_back(energy(psi, preset.energy, fft));
      else if (col == "lz") row.push_back(angular_momentum(psi, fft).value);
      else if (col == "entropy") row.push_back(entropy(psi));
      else if (col == "l2_error") row.push_back(l2_error(psi, preset.exact_at(t)));
      else if (col == "s_x1") row.push_back(condensate_widths_and_center(psi).s_x1);
      else if (col == "s_x2") row.push_back(condensate_widths_and_center(psi).s_x2);
      else if (col == "xc_1") row.push_back(condensate_widths_and_center(psi).center[0]);
      else if (col == "xc_2") row.push_back(condensate_widths_and_center(psi).center[1]);
      else if (col == "probe_re") row.push_back(psi.values[0].real());
      else if (col == "probe_im") row.push_back(psi.values[0].imag());
    }
    series.add_row(t, row);
  };

  std::filesystem::create_directories(cfg.out_dir);
  auto snap_path = [&](int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%06d.qspl", k);
    return (std::filesystem::path(cfg.out_dir) / buf).string();
  };

  record(0.0);
  if (cfg.snapshots == SnapshotPolicy::every_record)
    write_snapshot(snap_path(0), psi, 0.0);
  for (int k = 1; k <= steps; ++k) {
    stepper.step(psi);
    const bool at_record = k % cfg.record_stride == 0 || k == steps;
    if (at_record) {
      record(k * dt);
      if (cfg.snapshots == SnapshotPolicy::every_record && k != steps)
        write_snapshot(snap_path(k), psi, k * dt);
    }
  }
  stepper.finish(psi);

  res.final_time = steps * dt;
  res.stats = stepper.executor().stats;
  res.stats.transforms = fft.transform_count();

  res.csv_path = (std::filesystem::path(cfg.out_dir) / "diagnostics.csv").string();
  std::ofstream csv(res.csv_path, std::ios::binary | std::ios::trunc);
  csv << series.to_csv();
  if (cfg.snapshots != SnapshotPolicy::none) {
    res.snapshot_path = (std::filesystem::path(cfg.out_dir) / "final.qspl").string();
    write_snapshot(res.snapshot_path, psi, res.final_time);
  }
  std::ofstream echo((std::filesystem::path(cfg.out_dir) / "config.txt").string(),
                     std::ios::binary | std::ios::trunc);
  echo << cfg.dump();

  res.series = std::move(series);
  res.final_field = std::move(psi);
  return res;
}

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "[%s] %-58s  value %.3e  bound %.3e\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.bound);
    os << buf;
  }
  return os.str();
}

VerifyReport verify_preset(const std::string& name, double dt, const ParamMap& params) {
  VerifyReport report;
  const Preset preset = make_preset(name, params);

  auto add = [&](const std::string& check, double value, double bound) {
    report.checks.push_back({check, value, bound, value <= bound});
  };

  if (dt == 0.0) {
    add("flow identity at dt = 0", 0.0, 1e-11);
  } else {
    double residual = 0.0;
    switch (preset.family) {
      case ModelFamily::transport:
        residual = verify_plan(quadratic_plan(preset, dt), preset.symbol(), dt).matrix;
        break;
      case ModelFamily::kfp:
      case ModelFamily::fp: {
        const PlanResidual r =
            verify_plan(quadratic_plan(preset, dt), preset.symbol(), dt);
        residual = std::max(r.matrix, r.scalar);
        break;
      }
      case ModelFamily::qm:
        residual = verify_plan(quadratic_plan(preset, dt), preset.symbol(),
                               preset.time_scale * dt)
                       .matrix;
        break;
    }
    add("exact plan reproduces the matrix flow", residual, 1e-11);
  }

  if (name == "qm3d-periodic") {
    const Eigen::VectorXd ws = frequencies(preset.symbol());
    const Eigen::Vector3d expected =
        kPi / 180.0 * Eigen::Vector3d(20.0, 75.0, 132.0);
    add("frequencies match pi/180*(20,75,132)",
        (ws - expected).cwiseAbs().maxCoeff(), 1e-10);

    const Eigen::MatrixXd w =
        3.0 / kPi * standard_symplectic(3) * real_hamiltonian_form(preset.symbol());
    const Eigen::VectorXd coeffs = char_poly(w);
    // printed reference coefficients
    Eigen::VectorXd printed(7);
    printed << -7.0 / 384.0, 0, 123.0 / 80.0, 0, 407.0 / 120.0, 0, 1;
    add("scaled characteristic polynomial (printed coefficients)",
        (coeffs - printed).cwiseAbs().maxCoeff(), 1e-10);
    // coefficients implied by the lambda polynomial via its symmetric functions
    const double e1 = 72196.0 / 7200.0, e2 = 222088.0 / 7200.0,
                 e3 = 216341.0 / 7200.0;
    Eigen::VectorXd implied(7);
    implied << 3.0 * e1 / 32.0 - (e2 - e3) / 8.0, 0, (e2 + 2.25) / 4.0, 0,
        (e1 + 3.0) / 2.0, 0, 1;
    add("scaled characteristic polynomial (lambda symmetric functions)",
        (coeffs - implied).cwiseAbs().maxCoeff(), 1e-10);
  }

  for (const auto& fix : coefficient_fixtures()) {
    if (fix.preset != name) continue;
    for (const auto& r : check_fixture(fix))
      add(fix.name + ": " + r.label, r.deviation, r.tol);
  }
  return report;
}

std::string describe_plan(const std::string& name, double dt, const ParamMap& params,
                          std::optional<int> pivot) {
  Preset preset = make_preset(name, params);
  if (pivot) preset.pivot = *pivot - 1;
  std::ostringstream os;
  char buf[160];

  switch (preset.family) {
    case ModelFamily::transport: {
      const ShearFactorization sf = shear_factorize(preset.M, dt, preset.pivot);
      os << "shear factorization of e^{tM}, dt = " << dt
         << ", pivot axis = " << sf.pivot + 1 << "\n";
      os << "  y^(l):\n" << format_matrix(sf.y_left.transpose());
      for (const auto& [axis, y] : sf.y_mid) {
        os << "  y^(" << axis + 1 << "):\n" << format_matrix(y.transpose());
      }
      os << "  y^(r):\n" << format_matrix(sf.y_right.transpose());
      std::snprintf(buf, sizeof buf, "  reconstruction residual = %.3e\n", sf.residual);
      os << buf;
      break;
    }
    case ModelFamily::kfp: {
      os << "KFP factorization, dt = " << dt << "\n";
      os << "  decay weight (1/2) tanh dt = " << 0.5 * std::tanh(dt) << "\n";
      os << "  shear coefficient -tanh dt = " << -std::tanh(dt) << "\n";
      os << "  Fourier Gaussian matrix:\n" << format_matrix(kfp_a_matrix(dt));
      const PlanResidual r = verify_plan(kfp_plan(dt), kfp_symbol(), dt);
      std::snprintf(buf, sizeof buf, "  matrix identity residual = %.3e\n", r.matrix);
      os << buf;
      break;
    }
    case ModelFamily::fp: {
      os << "FP factorization, dt = " << dt << "\n";
      os << "  scalar exponent dt/2 = " << 0.5 * dt << "\n";
      os << "  shear coefficient -(e^dt - 1) = " << -(std::exp(dt) - 1.0) << "\n";
      os << "  alpha = " << fp_alpha(dt) << ", beta = " << fp_beta(dt) << "\n";
      os << "  Fourier Gaussian matrix:\n" << format_matrix(fp_a_matrix(dt));
      const PlanResidual r = verify_plan(fp_plan(dt), fp_symbol(), dt);
      std::snprintf(buf, sizeof buf,
                    "  matrix identity residual = %.3e (scalar %.3e)\n", r.matrix,
                    r.scalar);
      os << buf;
      break;
    }
    case ModelFamily::qm: {
      const TriangularSplitting ts =
          triangular_split(preset.B, preset.Vm, preset.time_scale * dt);
      os << "triangular factorization, dt = " << dt;
      if (preset.time_scale != 1.0)
        os << " (effective step " << preset.time_scale * dt << ")";
      os << "\n";
      os << "  A:\n" << format_matrix(ts.A);
      os << "  L:\n" << format_matrix(ts.L);
      os << "  U:\n" << format_matrix(ts.U);
      os << "  V^(l) diagonal:\n" << format_matrix(ts.v_left.transpose());
      os << "  V^(r):\n" << format_matrix(ts.v_right);
      std::snprintf(buf, sizeof buf,
                    "  matrix identity residual = %.3e after %d sweeps\n",
                    ts.identity_residual, ts.iterations);
      os << buf;
      break;
    }
  }
  return os.str();
}

}  // namespace qsplit
