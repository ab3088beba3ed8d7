#pragma once

#include "qsplit/diagnostics.hpp"
#include "qsplit/propagate.hpp"
#include "qsplit/symbol.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsplit {

enum class Scheme { esqm, esr, strang, bw };

Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);

enum class ModelFamily { transport, kfp, fp, qm };

/// One experiment of the catalog: model matrices in standard form, grid and
/// step defaults, initial condition, energy functional and valid schemes.
struct Preset {
  std::string name;
  ModelFamily family{};

  // transport: d_t f = (M x).grad f
  Eigen::MatrixXd M;
  std::optional<int> pivot;

  // qm standard form i d_t psi = -1/2 Lap psi - i(Bx).grad psi + V psi,
  // reached after rescaling time by time_scale (effective step = time_scale*dt)
  Eigen::MatrixXd B, Vm;
  double time_scale = 1.0;

  // non-quadratic part f(x, |psi|^2) of the physical-time equation
  Nonlinearity nonlinearity;  // empty f for purely quadratic models

  GridSpec default_grid;
  double default_dt = 0.1;
  int default_steps = 100;

  std::vector<Scheme> schemes;
  std::vector<std::string> default_diagnostics;

  std::function<Field(const GridSpec&, std::uint64_t seed)> initial;
  /// Analytic reference where available (transport): returns the map
  /// x -> solution value at time t.
  std::function<std::function<cplx(const Eigen::VectorXd&)>(double)> exact_at;

  EnergyModel energy;
  bool qualitative_initial = false;  // surrogate ground state in use

  QuadraticSymbol symbol() const;
};

using ParamMap = std::map<std::string, double>;

std::vector<std::string> preset_names();
Preset make_preset(const std::string& name, const ParamMap& params = {});

/// Quadratic-part plan of a preset at the given physical step (triangular
/// factorization for qm models, closed-form kinetic plans, shear
/// factorization for transport).
SplittingPlan quadratic_plan(const Preset& preset, double dt);

/// Stage list realizing one step of the scheme for this preset.
std::vector<Stage> build_stages(const Preset& preset, Scheme scheme, double dt);

/// Second-order directional splitting of e^{dt M x.grad} (2n-1 sweeps).
SplittingPlan directional_strang_plan(const Eigen::MatrixXd& m, double dt);

/// Roots of 7200 X^3 - 72196 X^2 + 222088 X - 216341, refined by Newton.
Eigen::Vector3d periodic_lambdas();

// --- embedded reference coefficient tables --------------------------------

struct FixtureEntry {
  std::string label;
  Eigen::MatrixXd expected;
  double tol;  // absolute max-norm tolerance
};

struct CoefficientFixture {
  std::string name;     // display name
  std::string preset;
  ParamMap params;
  double dt;
  std::vector<FixtureEntry> entries;
};

const std::vector<CoefficientFixture>& coefficient_fixtures();

struct FixtureResult {
  std::string table, label;
  double deviation, tol;
  bool pass;
};

std::vector<FixtureResult> check_fixture(const CoefficientFixture& fix);

}  // namespace qsplit
