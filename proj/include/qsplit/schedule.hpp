#pragma once

#include "qsplit/factors.hpp"
#include "qsplit/grid.hpp"

#include <vector>

namespace qsplit {

/// Per-axis representation a factor's multiplier needs, on the axes it
/// touches (untouched axes may be in either state).
std::vector<std::pair<int, AxisState>> factor_requirements(const ElementaryFactor& f);

struct ScheduleOp {
  enum class Kind { transform, multiply } kind;
  // transform
  int axis = -1;
  bool forward = true;
  // multiply: contiguous factor range [lo, hi] of the plan, all diagonal in
  // the state recorded below
  int lo = -1, hi = -1;
  std::vector<AxisState> state;
};

/// Lowering of a plan into transforms and merged multiplier passes, inserting
/// a transform only when a factor needs the other representation (adjacent
/// inverse/forward pairs never appear, and factors sharing a representation
/// merge into one pass).
struct Schedule {
  std::vector<ScheduleOp> ops;
  std::vector<AxisState> initial_state, final_state;

  int transform_count() const;
  int multiplier_count() const;
  /// Multiplier passes containing at least one shear (one-dimensional
  /// transport sweeps, for cost accounting).
  int sweep_count(const SplittingPlan& plan) const;
};

Schedule schedule(const SplittingPlan& plan,
                  std::vector<AxisState> start = {}, bool end_physical = true);

}  // namespace qsplit
