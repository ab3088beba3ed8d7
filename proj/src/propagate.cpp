#include "qsplit/propagate.hpp"

#include "qsplit/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace qsplit {

using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

constexpr double kDecayFloor = -700.0;  // exp underflow guard

cplx factor_exponent(const ElementaryFactor& f, const VectorXd& x) {
  const cplx i(0, 1);
  switch (f.kind) {
    case FactorKind::translation:
    case FactorKind::linear_phase:
      return i * f.alpha * x[f.axis_j];
    case FactorKind::fourier_quadratic:
      return -i * (x.transpose() * f.form * x)(0);
    case FactorKind::quadratic_phase:
      return i * (x.transpose() * f.form * x)(0);
    case FactorKind::shear:
      return i * f.alpha * x[f.axis_k] * x[f.axis_j];
    case FactorKind::gaussian_decay:
    case FactorKind::fourier_gaussian:
      return cplx(-(x.transpose() * f.form * x)(0), 0);
    case FactorKind::scalar:
      return f.gamma;
  }
  return {0, 0};
}

}  // namespace

std::size_t Executor::TableKeyHash::operator()(const TableKey& k) const {
  std::size_t h = std::hash<const void*>()(k.plan);
  h ^= std::hash<int>()(k.lo * 131 + k.hi) + 0x9e3779b9 + (h << 6) + (h >> 2);
  h ^= std::hash<unsigned>()(k.state_bits) + 0x9e3779b9 + (h << 6) + (h >> 2);
  return h;
}

Executor::Executor(GridSpec grid) : grid_(std::move(grid)) {}

void Executor::require_state(Field& f, const std::vector<AxisState>& want) {
  for (int a = 0; a < grid_.dims(); ++a) {
    if (f.axis_state[a] == want[a]) continue;
    fft_.transform(f, a,
                   want[a] == AxisState::frequency ? FourierDirection::forward
                                                   : FourierDirection::inverse);
  }
  stats.transforms = fft_.transform_count();
}

void Executor::materialize_physical(Field& f) {
  require_state(f, std::vector<AxisState>(grid_.dims(), AxisState::physical));
}

const VectorXcd& Executor::group_table(const SplittingPlan& plan, const void* id,
                                       int lo, int hi,
                                       const std::vector<AxisState>& state) {
  unsigned bits = 0;
  for (int a = 0; a < grid_.dims(); ++a)
    if (state[a] == AxisState::frequency) bits |= 1u << a;
  TableKey key{id, lo, hi, bits};
  auto it = tables_.find(key);
  if (it != tables_.end()) return it->second;

  VectorXcd table(grid_.size());
  bool clamped = false;
  for_each_node(grid_, state, [&](std::int64_t lin, const VectorXd& x) {
    cplx e(0, 0);
    for (int i = lo; i <= hi; ++i) e += factor_exponent(plan.factors[i], x);
    if (e.real() < kDecayFloor) {
      table[lin] = 0;
      clamped = true;
    } else {
      table[lin] = std::exp(e);
    }
  });
  if (clamped) stats.overflow_clamped = true;
  return tables_.emplace(key, std::move(table)).first->second;
}

void Executor::apply_plan(Field& f, const std::shared_ptr<const SplittingPlan>& plan) {
  const auto& factors = plan->factors;
  const int m = static_cast<int>(factors.size());
  int glo = -1;

  auto flush = [&](int hi) {
    if (glo < 0) return;
    const VectorXcd& table = group_table(*plan, plan.get(), glo, hi, f.axis_state);
    f.values.array() *= table.array();
    ++stats.multiplier_passes;
    for (int i = glo; i <= hi; ++i)
      if (factors[i].kind == FactorKind::shear) {
        ++stats.sweeps;
        break;
      }
    glo = -1;
  };

  for (int i = 0; i < m; ++i) {
    bool satisfied = true;
    for (const auto& [axis, want] : factor_requirements(factors[i]))
      if (f.axis_state[axis] != want) satisfied = false;
    if (!satisfied) {
      flush(i - 1);
      for (const auto& [axis, want] : factor_requirements(factors[i]))
        if (f.axis_state[axis] != want)
          fft_.transform(f, axis,
                         want == AxisState::frequency ? FourierDirection::forward
                                                      : FourierDirection::inverse);
    }
    if (glo < 0) glo = i;
  }
  flush(m - 1);
  stats.transforms = fft_.transform_count();
}

Eigen::VectorXcd Executor::build_phase_table(
    const std::function<cplx(const VectorXd&)>& exponent) const {
  VectorXcd table(grid_.size());
  std::vector<AxisState> phys(grid_.dims(), AxisState::physical);
  for_each_node(grid_, phys, [&](std::int64_t lin, const VectorXd& x) {
    const cplx e = exponent(x);
    table[lin] = e.real() < kDecayFloor ? cplx(0, 0) : std::exp(e);
  });
  return table;
}

void Executor::apply_static_phase(Field& f, const void* key,
                                  const std::function<cplx(const VectorXd&)>& exponent) {
  materialize_physical(f);
  auto it = phase_tables_.find(key);
  if (it == phase_tables_.end())
    it = phase_tables_.emplace(key, build_phase_table(exponent)).first;
  f.values.array() *= it->second.array();
  ++stats.phase_passes;
}

void Executor::apply_density_phase(
    Field& f, const std::function<cplx(const VectorXd&, double)>& exponent,
    const VectorXcd* static_table) {
  materialize_physical(f);
  bool clamped = false;
  for_each_node(grid_, f.axis_state, [&](std::int64_t lin, const VectorXd& x) {
    const double rho = std::norm(f.values[lin]);
    cplx e = exponent(x, rho);
    cplx v = e.real() < kDecayFloor ? cplx(0, 0) : std::exp(e);
    if (e.real() < kDecayFloor) clamped = true;
    if (static_table) v *= (*static_table)[lin];
    f.values[lin] *= v;
  });
  if (clamped) stats.overflow_clamped = true;
  ++stats.phase_passes;
}

Stage Stage::make_plan(SplittingPlan p) {
  Stage s;
  s.plan = std::make_shared<const SplittingPlan>(std::move(p));
  return s;
}

Stage Stage::make_phase(Nonlinearity nl, cplx scale) {
  Stage s;
  s.phase = std::move(nl);
  s.phase_scale = scale;
  return s;
}

Stepper::Stepper(GridSpec grid, std::vector<Stage> stages)
    : ex_(std::move(grid)), stages_(std::move(stages)) {}

void Stepper::step(Field& f) {
  for (const auto& stage : stages_) {
    if (stage.plan) {
      ex_.apply_plan(f, stage.plan);
    } else if (stage.phase) {
      const auto& nl = *stage.phase;
      const cplx scale = stage.phase_scale;
      if (nl.depends_on_density) {
        ex_.apply_density_phase(
            f, [&](const VectorXd& x, double rho) { return scale * nl.f(x, rho); });
      } else {
        ex_.apply_static_phase(
            f, &stage, [&](const VectorXd& x) { return scale * nl.f(x, 0.0); });
      }
    }
  }
}

Field apply_plan(Field f, const SplittingPlan& plan) {
  if (!f.all_physical()) throw std::invalid_argument("apply_plan: field must be physical");
  Executor ex(f.spec);
  ex.apply_plan(f, std::make_shared<const SplittingPlan>(plan));
  ex.materialize_physical(f);
  return f;
}

std::vector<Stage> esqm_stages(const SplittingPlan& plan, const Nonlinearity& f,
                               double dt) {
  std::vector<Stage> stages;
  const cplx half(0, -0.5 * dt);
  if (f.f) stages.push_back(Stage::make_phase(f, half));
  stages.push_back(Stage::make_plan(plan));
  if (f.f) stages.push_back(Stage::make_phase(f, half));
  return stages;
}

Field esqm_step(Field psi, const SplittingPlan& plan, const Nonlinearity& f,
                double dt) {
  if (!psi.all_physical())
    throw std::invalid_argument("esqm_step: field must be physical");
  Stepper st(psi.spec, esqm_stages(plan, f, dt));
  st.step(psi);
  st.finish(psi);
  return psi;
}

Field fused_esqm_run(Field psi, const SplittingPlan& plan, const Nonlinearity& f,
                     double dt, int steps, RunStats* stats) {
  if (steps <= 0) return psi;
  const auto& fs = plan.factors;
  if (fs.size() < 2 || fs.front().kind != FactorKind::quadratic_phase ||
      fs.back().kind != FactorKind::quadratic_phase)
    throw std::invalid_argument("fused_esqm_run: plan must be phase-bracketed");

  Executor ex(psi.spec);
  auto head = std::make_shared<const SplittingPlan>(
      SplittingPlan{plan.dims, {fs.front()}, plan.provenance, plan.exactness});
  auto tail = std::make_shared<const SplittingPlan>(
      SplittingPlan{plan.dims, {fs.back()}, plan.provenance, plan.exactness});
  auto core = std::make_shared<const SplittingPlan>(SplittingPlan{
      plan.dims, std::vector<ElementaryFactor>(fs.begin() + 1, fs.end() - 1),
      plan.provenance, plan.exactness});

  // merged interior pass: both bracketing phases plus the full nonlinear phase
  const Eigen::MatrixXd merged_form = fs.front().form + fs.back().form;
  const VectorXcd boundary = ex.build_phase_table([&](const VectorXd& x) {
    return cplx(0, 1) * (x.transpose() * merged_form * x)(0);
  });

  const cplx half(0, -0.5 * dt), full(0, -dt);
  auto half_phase = [&](Field& g) {
    if (!f.f) return;
    ex.apply_density_phase(
        g, [&](const VectorXd& x, double rho) { return half * f.f(x, rho); });
  };

  half_phase(psi);
  ex.apply_plan(psi, head);
  ex.apply_plan(psi, core);
  for (int k = 1; k < steps; ++k) {
    if (f.f) {
      ex.apply_density_phase(
          psi, [&](const VectorXd& x, double rho) { return full * f.f(x, rho); },
          &boundary);
    } else {
      ex.materialize_physical(psi);
      psi.values.array() *= boundary.array();
      ++ex.stats.phase_passes;
    }
    ex.apply_plan(psi, core);
  }
  ex.apply_plan(psi, tail);
  half_phase(psi);
  ex.materialize_physical(psi);
  if (stats) *stats = ex.stats;
  return psi;
}

}  // namespace qsplit
