#include "qsplit/schedule.hpp"

#include <stdexcept>

namespace qsplit {

namespace {

std::vector<int> form_support(const Eigen::MatrixXd& form) {
  std::vector<int> axes;
  for (int a = 0; a < form.rows(); ++a)
    if (form.row(a).cwiseAbs().maxCoeff() != 0.0) axes.push_back(a);
  return axes;
}

}  // namespace

std::vector<std::pair<int, AxisState>> factor_requirements(const ElementaryFactor& f) {
  std::vector<std::pair<int, AxisState>> req;
  switch (f.kind) {
    case FactorKind::translation:
      req.emplace_back(f.axis_j, AxisState::frequency);
      break;
    case FactorKind::linear_phase:
      req.emplace_back(f.axis_j, AxisState::physical);
      break;
    case FactorKind::fourier_quadratic:
    case FactorKind::fourier_gaussian:
      for (int a : form_support(f.form)) req.emplace_back(a, AxisState::frequency);
      break;
    case FactorKind::quadratic_phase:
    case FactorKind::gaussian_decay:
      for (int a : form_support(f.form)) req.emplace_back(a, AxisState::physical);
      break;
    case FactorKind::shear:
      req.emplace_back(f.axis_j, AxisState::frequency);
      req.emplace_back(f.axis_k, AxisState::physical);
      break;
    case FactorKind::scalar:
      break;
  }
  return req;
}

int Schedule::transform_count() const {
  int c = 0;
  for (const auto& op : ops)
    if (op.kind == ScheduleOp::Kind::transform) ++c;
  return c;
}

int Schedule::multiplier_count() const {
  int c = 0;
  for (const auto& op : ops)
    if (op.kind == ScheduleOp::Kind::multiply) ++c;
  return c;
}

int Schedule::sweep_count(const SplittingPlan& plan) const {
  int c = 0;
  for (const auto& op : ops) {
    if (op.kind != ScheduleOp::Kind::multiply) continue;
    for (int i = op.lo; i <= op.hi; ++i)
      if (plan.factors[i].kind == FactorKind::shear) {
        ++c;
        break;
      }
  }
  return c;
}

Schedule schedule(const SplittingPlan& plan, std::vector<AxisState> start,
                  bool end_physical) {
  const int n = plan.dims;
  if (start.empty()) start.assign(n, AxisState::physical);
  if (static_cast<int>(start.size()) != n)
    throw std::invalid_argument("schedule: state size mismatch");

  Schedule sch;
  sch.initial_state = start;
  std::vector<AxisState> cur = start;
  bool group_open = false;

  auto emit_transform = [&](int axis, AxisState want) {
    ScheduleOp op;
    op.kind = ScheduleOp::Kind::transform;
    op.axis = axis;
    op.forward = want == AxisState::frequency;
    sch.ops.push_back(op);
    cur[axis] = want;
  };

  for (int i = 0; i < static_cast<int>(plan.factors.size()); ++i) {
    const auto req = factor_requirements(plan.factors[i]);
    bool satisfied = true;
    for (const auto& [axis, want] : req)
      if (cur[axis] != want) satisfied = false;

    if (!satisfied) {
      group_open = false;
      for (const auto& [axis, want] : req)
        if (cur[axis] != want) emit_transform(axis, want);
    }
    if (group_open && sch.ops.back().kind == ScheduleOp::Kind::multiply) {
      sch.ops.back().hi = i;
    } else {
      ScheduleOp op;
      op.kind = ScheduleOp::Kind::multiply;
      op.lo = op.hi = i;
      op.state = cur;
      sch.ops.push_back(op);
      group_open = true;
    }
  }
  if (end_physical)
    for (int a = 0; a < n; ++a)
      if (cur[a] != AxisState::physical) emit_transform(a, AxisState::physical);
  sch.final_state = cur;
  return sch;
}

}  // namespace qsplit
