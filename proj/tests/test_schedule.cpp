#include "qsplit/schedule.hpp"

#include "qsplit/presets.hpp"
#include "qsplit/triangular.hpp"

#include <doctest.h>

using namespace qsplit;

TEST_CASE("triangular 3D plan costs exactly 2n transforms") {
  const Preset p = make_preset("qm3d-periodic");
  const SplittingPlan plan = quadratic_plan(p, 0.2);
  const Schedule sch = schedule(plan);
  CHECK(sch.transform_count() == 6);

  // forward sweeps hit axes 3, 2, 1; inverses come back 3, 2, 1
  std::vector<std::pair<int, bool>> ts;
  for (const auto& op : sch.ops)
    if (op.kind == ScheduleOp::Kind::transform) ts.emplace_back(op.axis, op.forward);
  REQUIRE(ts.size() == 6);
  CHECK(ts[0] == std::pair{2, true});
  CHECK(ts[1] == std::pair{1, true});
  CHECK(ts[2] == std::pair{0, true});
  CHECK(ts[3] == std::pair{2, false});
  CHECK(ts[4] == std::pair{1, false});
  CHECK(ts[5] == std::pair{0, false});
}

TEST_CASE("a single quadratic phase needs no transforms") {
  SplittingPlan plan;
  plan.dims = 2;
  plan.factors = {ElementaryFactor::quadratic_phase(Eigen::Matrix2d::Identity())};
  CHECK(schedule(plan).transform_count() == 0);
}

TEST_CASE("3D transport shear plan schedules 8 transforms standalone") {
  const Preset p = make_preset("transport3d");
  const SplittingPlan plan = quadratic_plan(p, 0.3);
  const Schedule sch = schedule(plan);
  CHECK(sch.transform_count() == 8);
  CHECK(sch.sweep_count(plan) == 4);

  // repeating the plan from its own natural end state merges the boundary
  // inverse/forward pair on the pivot axis
  const Schedule open = schedule(plan, {}, false);
  const Schedule steady = schedule(plan, open.final_state, false);
  CHECK(steady.transform_count() == 6);
}

TEST_CASE("sweep counts for the reference transport schemes") {
  const Preset p3 = make_preset("transport3d");
  const SplittingPlan strang3 = directional_strang_plan(p3.M, 0.3);
  CHECK(schedule(strang3).sweep_count(strang3) == 5);

  const Preset p4 = make_preset("transport4d");
  const SplittingPlan esr4 = quadratic_plan(p4, 0.05);
  CHECK(schedule(esr4).sweep_count(esr4) == 5);
  const SplittingPlan strang4 = directional_strang_plan(p4.M, 0.05);
  CHECK(schedule(strang4).sweep_count(strang4) == 7);
}

TEST_CASE("mixed-representation requirements per factor kind") {
  auto req = factor_requirements(ElementaryFactor::shear(0, 1, 0.5));
  REQUIRE(req.size() == 2);
  CHECK(req[0] == std::pair{0, AxisState::frequency});
  CHECK(req[1] == std::pair{1, AxisState::physical});
  CHECK(factor_requirements(ElementaryFactor::scalar(cplx(1, 0))).empty());

  Eigen::Matrix2d partial = Eigen::Matrix2d::Zero();
  partial(1, 1) = 2.0;
  auto fr = factor_requirements(ElementaryFactor::fourier_gaussian(partial));
  REQUIRE(fr.size() == 1);  // only the touched axis constrains the state
  CHECK(fr[0] == std::pair{1, AxisState::frequency});
}
