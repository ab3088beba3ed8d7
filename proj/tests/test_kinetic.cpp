#include "qsplit/kinetic.hpp"

#include "qsplit/symbol.hpp"

#include <doctest.h>

#include <cmath>

using Eigen::Matrix2d;
using namespace qsplit;

TEST_CASE("KFP weights vanish as t -> 0") {
  const double t = 1e-8;
  CHECK(kfp_a_matrix(t).cwiseAbs().maxCoeff() < 1e-7);
  CHECK(std::tanh(t) < 1e-7);
  CHECK_THROWS_AS((void)kfp_plan(0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)kfp_plan(-1.0), std::invalid_argument);
}

TEST_CASE("KFP Gaussian weight matrix at t = 1") {
  const Matrix2d a = kfp_a_matrix(1.0);
  const double sh = std::sinh(1.0), th = std::tanh(1.0);
  CHECK(a(0, 0) == doctest::Approx(0.25 * (1 - th * (1 - sh * sh))).epsilon(1e-15));
  CHECK(a(0, 1) == doctest::Approx(0.5 * sh * sh).epsilon(1e-15));
  CHECK(a(1, 1) == doctest::Approx(0.5 * std::sinh(2.0)).epsilon(1e-15));
}

TEST_CASE("KFP plan satisfies the matrix identity") {
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    const PlanResidual r = verify_plan(kfp_plan(t), kfp_symbol(), t);
    CHECK(r.matrix <= 1e-12);
    CHECK(r.scalar <= 1e-13);
  }
}

TEST_CASE("KFP Gaussian weights stay nonnegative") {
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    Eigen::SelfAdjointEigenSolver<Matrix2d> es(kfp_a_matrix(t));
    CHECK(es.eigenvalues().minCoeff() >= -1e-14);
  }
}

TEST_CASE("FP weights vanish as t -> 0") {
  const double t = 1e-9;
  CHECK(fp_alpha(t) < 1e-4);  // alpha ~ sqrt(t)/2
  CHECK(fp_beta(t) < 1e-4);
  CHECK(fp_a_matrix(t).cwiseAbs().maxCoeff() < 1e-8);
  CHECK_THROWS_AS((void)fp_plan(0.0), std::invalid_argument);
}

TEST_CASE("FP closed forms at t = 1") {
  CHECK(fp_alpha(1.0) ==
        doctest::Approx(0.5 * std::sqrt((1 - std::exp(-1.0)) * std::exp(-1.0)))
            .epsilon(1e-15));
  CHECK(fp_beta(1.0) == doctest::Approx(0.5 * std::sqrt(std::exp(1.0) - 1)).epsilon(1e-15));
  const Matrix2d a = fp_a_matrix(1.0);
  CHECK(a(0, 0) ==
        doctest::Approx(0.5 * (std::exp(2.0) + 2 + 3 - 4 * std::exp(1.0)))
            .epsilon(1e-15));
  CHECK(a(0, 1) ==
        doctest::Approx(-2.0 * std::sinh(0.5) * std::sinh(0.5)).epsilon(1e-15));
  CHECK(a(1, 1) == doctest::Approx(0.5 * (1 - std::exp(-2.0))).epsilon(1e-15));
}

TEST_CASE("FP plan satisfies the matrix identity including the scalar") {
  for (double t : {0.1, 0.5, 1.0}) {
    const PlanResidual r = verify_plan(fp_plan(t), fp_symbol(), t);
    CHECK(r.matrix <= 1e-11);
    CHECK(r.scalar <= 1e-12);
  }
}

TEST_CASE("FP plan lists the seven factors in application order") {
  const SplittingPlan plan = fp_plan(0.5);
  REQUIRE(plan.factors.size() == 7);
  CHECK(plan.factors[0].kind == FactorKind::quadratic_phase);
  CHECK(plan.factors[1].kind == FactorKind::fourier_quadratic);
  CHECK(plan.factors[2].kind == FactorKind::quadratic_phase);
  CHECK(plan.factors[3].kind == FactorKind::fourier_quadratic);
  CHECK(plan.factors[4].kind == FactorKind::fourier_gaussian);
  CHECK(plan.factors[5].kind == FactorKind::shear);
  CHECK(plan.factors[6].kind == FactorKind::scalar);
  CHECK(plan.factors[5].alpha ==
        doctest::Approx(-(std::exp(0.5) - 1)).epsilon(1e-15));
  CHECK(plan.factors[6].gamma.real() == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("single-factor plans verify against their own symbols") {
  // a lone shear against the transport symbol of its generator
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = -0.8;
  SplittingPlan plan;
  plan.dims = 2;
  plan.factors = {ElementaryFactor::shear(0, 1, -0.8)};
  CHECK(verify_plan(plan, transport_symbol(m), 1.0).matrix < 1e-15);
}
