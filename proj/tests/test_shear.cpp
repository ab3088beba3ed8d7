#include "qsplit/shear.hpp"

#include "qsplit/matfun.hpp"
#include "qsplit/presets.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

using Eigen::MatrixXd;
using Eigen::VectorXd;
using namespace qsplit;

TEST_CASE("2D rotation reduces to the tan/sin/tan shears") {
  MatrixXd m(2, 2);
  m << 0, 1, -1, 0;
  const double theta = 0.5;
  const ShearFactorization sf = shear_factorize(m, theta);
  CHECK(sf.pivot == 0);
  CHECK(theta * sf.y_left[1] == doctest::Approx(std::tan(theta / 2)).epsilon(1e-13));
  CHECK(theta * sf.y_mid[0].second[0] ==
        doctest::Approx(-std::sin(theta)).epsilon(1e-13));
  CHECK(theta * sf.y_right[1] == doctest::Approx(std::tan(theta / 2)).epsilon(1e-13));
}

TEST_CASE("M = 0 gives vanishing shear vectors") {
  MatrixXd m = MatrixXd::Zero(3, 3);
  CHECK_THROWS_AS((void)shear_factorize(m, 0.1), std::invalid_argument);
  // a matrix with one admissible column but zero pivot row
  m << 0, 0, 0, 1, 0, 0, 1, 0, 0;
  const ShearFactorization sf = shear_factorize(m, 0.1);
  CHECK(sf.reconstruct().isApprox(MatrixXd((0.1 * m).exp()), 1e-12));
}

TEST_CASE("structural zeros and residual bound hold for the presets") {
  for (const char* name : {"transport3d", "transport4d"}) {
    const Preset p = make_preset(name);
    const ShearFactorization sf =
        shear_factorize(p.M, p.default_dt, p.pivot);
    CHECK(sf.y_left[sf.pivot] == 0.0);
    CHECK(sf.y_right[sf.pivot] == 0.0);
    for (const auto& [axis, y] : sf.y_mid) CHECK(y[axis] == 0.0);
    CHECK(sf.residual <= 1e-12);
    // every shear factor has determinant one; so does e^{tM} for tr M = 0
    CHECK(sf.reconstruct().determinant() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("pivot selection and failure modes") {
  MatrixXd m(3, 3);  // only column 2 is fully nonzero off the diagonal
  m << 0, 1, 1, 0, 0, 1, 0, 1, 0;
  CHECK(shear_factorize(m, 0.01).pivot == 2);
  CHECK_THROWS_AS((void)shear_factorize(m, 0.01, 0), std::invalid_argument);

  MatrixXd bad(3, 3);
  bad << 0, 1, 0, 1, 0, 1, 0, 1, 0;  // every column has an off-diagonal zero
  CHECK_THROWS_WITH_AS((void)shear_factorize(bad, 0.01),
                       doctest::Contains("condition (3.2)"),
                       std::invalid_argument);

  MatrixXd diag(2, 2);
  diag << 1, 1, -1, 0;
  CHECK_THROWS_AS((void)shear_factorize(diag, 0.01), std::invalid_argument);
}

TEST_CASE("random matrices reconstruct the exponential") {
  std::mt19937_64 rng(1234);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = i == j ? 0.0 : nd(rng);
    // make the first column admissible
    for (int j = 1; j < n; ++j)
      if (m(j, 0) == 0.0) m(j, 0) = 1.0;
    const double t = 0.1 * (0.1 + std::abs(nd(rng)));
    const ShearFactorization sf = shear_factorize(m, std::min(t, 0.1));
    CHECK(sf.residual <= 1e-12);
  }
}

TEST_CASE("continuation extends the solvable step") {
  // the 4D preset needs continuation at dt well beyond the table's step
  const Preset p = make_preset("transport4d");
  const ShearFactorization sf = shear_factorize(p.M, 0.4, p.pivot);
  CHECK(sf.residual <= 1e-12);
}

TEST_CASE("plan factors carry the shear amounts in application order") {
  const Preset p = make_preset("transport3d");
  const ShearFactorization sf = shear_factorize(p.M, 0.3, p.pivot);
  const SplittingPlan plan = sf.to_plan();
  CHECK(plan.dims == 3);
  CHECK(plan.exactness == Exactness::exact_in_time);
  // first applied factors act on the pivot axis (the right flank)
  CHECK(plan.factors.front().axis_j == sf.pivot);
  CHECK(plan.factors.back().axis_j == sf.pivot);
  const PlanResidual r = verify_plan(plan, transport_symbol(p.M), 0.3);
  CHECK(r.matrix < 1e-12);
}
