#include "qsplit/triangular.hpp"

#include "qsplit/presets.hpp"

#include <doctest.h>

#include <cmath>

using Eigen::Matrix2d;
using Eigen::MatrixXd;
using namespace qsplit;

TEST_CASE("free flow is a fixed point of the iteration") {
  const TriangularSplitting ts =
      triangular_split(Matrix2d::Zero(), Matrix2d::Zero(), 0.05);
  CHECK((ts.A - 0.5 * Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(ts.L.cwiseAbs().maxCoeff() < 1e-13);
  CHECK(ts.U.cwiseAbs().maxCoeff() < 1e-13);
  CHECK(ts.v_left.cwiseAbs().maxCoeff() < 1e-13);
  CHECK(ts.v_right.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("isotropic harmonic case matches the closed form") {
  // B = 0, V = |x|^2/2: per axis the exact weights are sin(t)/(2t) and
  // tan(t/2)/(2t)
  const double t = 1e-3;
  const TriangularSplitting ts =
      triangular_split(Matrix2d::Zero(), 0.5 * Matrix2d::Identity(), t);
  const double a_expect = std::sin(t) / (2 * t);
  const double v_expect = std::tan(t / 2) / (2 * t);
  CHECK(ts.A(0, 0) == doctest::Approx(a_expect).epsilon(1e-13));
  CHECK(ts.A(1, 1) == doctest::Approx(a_expect).epsilon(1e-13));
  CHECK(ts.A(0, 1) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(ts.v_left[0] == doctest::Approx(v_expect).epsilon(1e-10));
  CHECK(ts.v_left[1] == doctest::Approx(v_expect).epsilon(1e-10));
  CHECK(ts.v_right(0, 0) == doctest::Approx(v_expect).epsilon(1e-10));
  CHECK(ts.L.cwiseAbs().maxCoeff() == 0.0);
  CHECK(ts.U.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("shapes, identity residual and contraction") {
  const Preset p = make_preset("qm3d-magnetic");
  const TriangularSplitting ts = triangular_split(p.B, p.Vm, 0.1);

  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) CHECK(ts.L(i, j) == 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j <= i; ++j) CHECK(ts.U(i, j) == 0.0);
  CHECK((ts.A - ts.A.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(ts.identity_residual <= 1e-11);

  // geometric contraction after the residual drops below 1e-2
  double worst_ratio = 0;
  for (std::size_t k = 0; k + 1 < ts.residual_history.size(); ++k) {
    if (ts.residual_history[k] < 1e-2 && ts.residual_history[k] > 1e-12)
      worst_ratio = std::max(worst_ratio,
                             ts.residual_history[k + 1] / ts.residual_history[k]);
  }
  CHECK(worst_ratio < 1.0);
}

TEST_CASE("semigroup consistency of the exact coefficients") {
  // coefficients at t/2 composed twice agree with the one-step flow
  const Preset p = make_preset("qm3d-periodic");
  const double t = 0.2;
  const QuadraticSymbol sym = p.symbol();
  const TriangularSplitting half = triangular_split(p.B, p.Vm, t / 2);
  Eigen::MatrixXcd flow_half = Eigen::MatrixXcd::Identity(6, 6);
  for (const auto& f : half.to_plan().factors)
    flow_half = factor_flow(f, 3) * flow_half;
  const Eigen::MatrixXcd two_half = flow_half * flow_half;
  const Eigen::MatrixXcd full = hamiltonian_flow(sym, t).matrix;
  CHECK((two_half - full).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("large steps are rejected with a radius error") {
  const Preset p = make_preset("qm2d-magnetic");
  // effective step far beyond the factorization radius
  CHECK_THROWS_AS((void)triangular_split(p.B, p.Vm, 0.7), std::domain_error);
}

TEST_CASE("t = 0 returns the seed limit") {
  const Preset p = make_preset("qm3d-periodic");
  const TriangularSplitting ts = triangular_split(p.B, p.Vm, 0.0);
  CHECK((ts.A - 0.5 * MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ts.v_left.asDiagonal().toDenseMatrix() + ts.v_right - p.Vm)
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("symbol-based entry point extracts the standard form") {
  const Preset p = make_preset("gpe2d");
  const TriangularSplitting a = triangular_split(p.B, p.Vm, 1e-3);
  const TriangularSplitting b = triangular_split(p.symbol(), 1e-3);
  CHECK((a.A - b.A).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.v_right - b.v_right).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reference coefficient tables reproduce to printed digits") {
  for (const auto& fix : coefficient_fixtures()) {
    CAPTURE(fix.name);
    for (const auto& r : check_fixture(fix)) {
      CAPTURE(r.label);
      CAPTURE(r.deviation);
      CHECK(r.pass);
    }
  }
}
