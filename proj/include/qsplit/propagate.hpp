#pragma once

#include "qsplit/factors.hpp"
#include "qsplit/fft.hpp"
#include "qsplit/grid.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>

namespace qsplit {

/// Cost counters for one run (one-axis transforms, merged multiplier passes,
/// physical-space phase passes, and shear sweeps).
struct RunStats {
  std::int64_t transforms = 0;
  std::int64_t multiplier_passes = 0;
  std::int64_t phase_passes = 0;
  std::int64_t sweeps = 0;
  bool overflow_clamped = false;
};

/// Nonlinearity f(x, |psi|^2) entering the non-quadratic half steps; the
/// half-step multiplier is exp(-i dt/2 f). rho-independent nonlinearities
/// (plain non-quadratic potentials) are cached as tables.
struct Nonlinearity {
  std::function<double(const Eigen::VectorXd&, double)> f;
  bool depends_on_density = true;
};

/// Executes splitting plans on fields with lazy one-axis transforms: a
/// transform happens only when the next multiplier needs the other
/// representation, so adjacent inverse/forward pairs cancel across factors,
/// stages and steps. Static multiplier tables are precomputed per
/// (plan, factor range, representation) and cached.
class Executor {
 public:
  explicit Executor(GridSpec grid);

  PartialFourier& fft() { return fft_; }
  const GridSpec& grid() const { return grid_; }

  void require_state(Field& f, const std::vector<AxisState>& want);
  void materialize_physical(Field& f);

  /// Applies all factors of the plan from the field's current state; the
  /// field is left in whatever mixed state the last factor used.
  void apply_plan(Field& f, const std::shared_ptr<const SplittingPlan>& plan);

  /// Physical-space multiplier exp(exponent(x)); cached per key.
  void apply_static_phase(Field& f, const void* key,
                          const std::function<cplx(const Eigen::VectorXd&)>& exponent);

  /// Physical-space multiplier exp(exponent(x, |psi(x)|^2)), optionally times
  /// a precomputed static table.
  void apply_density_phase(Field& f,
                           const std::function<cplx(const Eigen::VectorXd&, double)>& exponent,
                           const Eigen::VectorXcd* static_table = nullptr);

  /// Builds the table exp(exponent(x)) on the physical grid.
  Eigen::VectorXcd build_phase_table(const std::function<cplx(const Eigen::VectorXd&)>& exponent) const;

  RunStats stats;

 private:
  struct TableKey {
    const void* plan;
    int lo, hi;
    unsigned state_bits;
    bool operator==(const TableKey&) const = default;
  };
  struct TableKeyHash {
    std::size_t operator()(const TableKey& k) const;
  };

  const Eigen::VectorXcd& group_table(const SplittingPlan& plan, const void* id,
                                      int lo, int hi, const std::vector<AxisState>& state);

  GridSpec grid_;
  PartialFourier fft_;
  std::unordered_map<TableKey, Eigen::VectorXcd, TableKeyHash> tables_;
  std::unordered_map<const void*, Eigen::VectorXcd> phase_tables_;
};

/// One stage of a composed time stepper: either a splitting plan or a
/// physical-space (possibly nonlinear) phase with exponent scale * f.
struct Stage {
  std::shared_ptr<const SplittingPlan> plan;
  std::optional<Nonlinearity> phase;
  cplx phase_scale{0, 0};  // multiplier exponent = phase_scale * f(x, rho)

  static Stage make_plan(SplittingPlan p);
  static Stage make_phase(Nonlinearity nl, cplx scale);
};

/// Runs a fixed stage list once per step. Fields stay in mixed representation
/// between stages and steps; call finish() before reading physical values.
class Stepper {
 public:
  Stepper(GridSpec grid, std::vector<Stage> stages);

  void step(Field& f);
  void finish(Field& f) { ex_.materialize_physical(f); }

  Executor& executor() { return ex_; }
  const std::vector<Stage>& stages() const { return stages_; }

 private:
  Executor ex_;
  std::vector<Stage> stages_;
};

/// Applies one plan to a fully physical field, returning a physical field.
Field apply_plan(Field f, const SplittingPlan& plan);

/// One step of the quadratic-exact scheme with Strang-coupled nonlinearity:
/// half phase, quadratic plan, half phase.
Field esqm_step(Field psi, const SplittingPlan& plan, const Nonlinearity& f, double dt);

std::vector<Stage> esqm_stages(const SplittingPlan& plan, const Nonlinearity& f, double dt);

/// Multi-step run with the end-of-step phases merged across interior step
/// boundaries into a single pass (left phase + full nonlinear phase + right
/// phase); agrees with the unfused loop to round-off.
Field fused_esqm_run(Field psi, const SplittingPlan& plan, const Nonlinearity& f,
                     double dt, int steps, RunStats* stats = nullptr);

}  // namespace qsplit
