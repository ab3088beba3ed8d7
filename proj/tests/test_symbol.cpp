#include "qsplit/symbol.hpp"

#include "qsplit/matfun.hpp"
#include "qsplit/presets.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using namespace qsplit;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("standard symplectic matrix") {
  const MatrixXd j1 = standard_symplectic(1);
  CHECK(j1(0, 1) == 1.0);
  CHECK(j1(1, 0) == -1.0);
  for (int n : {1, 2, 3, 4}) {
    const MatrixXd j = standard_symplectic(n);
    CHECK((j * j + MatrixXd::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((j.transpose() + j).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("hamiltonian flow basics") {
  const QuadraticSymbol kfp = kfp_symbol();
  CHECK((hamiltonian_flow(kfp, 0.0).matrix - MatrixXcd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  SUBCASE("free Schroedinger closed form") {
    // p = i |xi|^2 / 2 in one dimension
    const QuadraticSymbol p = qm_symbol(MatrixXd::Zero(1, 1), MatrixXd::Zero(1, 1));
    const double t = 0.37;
    MatrixXcd expect = MatrixXcd::Identity(2, 2);
    expect(0, 1) = cplx(0, t);  // -2it J Q is nilpotent with entry t*i
    CHECK((hamiltonian_flow(p, t).matrix - expect).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("real symmetric symbols generate symplectic flows") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    const MatrixXd j = standard_symplectic(2);
    for (int trial = 0; trial < 25; ++trial) {
      MatrixXd q(4, 4);
      for (int i = 0; i < 16; ++i) q(i / 4, i % 4) = nd(rng);
      q = (0.5 * (q + q.transpose())).eval();
      const QuadraticSymbol p = QuadraticSymbol::homogeneous(2, q.cast<cplx>());
      const double t = 0.05 + 0.9 * std::abs(nd(rng)) / 3;
      const MatrixXcd f = hamiltonian_flow(p, std::min(t, 1.0)).matrix;
      CHECK((f.transpose() * j.cast<cplx>() * f - j.cast<cplx>())
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("model symbols") {
  SUBCASE("transport with M = 0 is the zero symbol") {
    CHECK(transport_symbol(MatrixXd::Zero(3, 3)).Q.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("KFP symbol entries") {
    const QuadraticSymbol p = kfp_symbol();
    CHECK(p.Q(1, 1) == cplx(1, 0));
    CHECK(p.Q(3, 3) == cplx(1, 0));
    CHECK(p.Q(1, 2) == cplx(0, 0.5));
    CHECK(p.Q(2, 1) == cplx(0, 0.5));
    CHECK(p.Q.cwiseAbs().sum() == doctest::Approx(3.0));
  }
  SUBCASE("FP symbol carries the constant -1/2") {
    CHECK(fp_symbol().c == cplx(-0.5, 0));
  }
  SUBCASE("free qm symbol is i |xi|^2 / 2 only") {
    const QuadraticSymbol p = qm_symbol(MatrixXd::Zero(2, 2), MatrixXd::Zero(2, 2));
    MatrixXcd expect = MatrixXcd::Zero(4, 4);
    expect(2, 2) = expect(3, 3) = cplx(0, 0.5);
    CHECK((p.Q - expect).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("skewness and symmetry are enforced") {
    CHECK_THROWS_AS((void)qm_symbol(MatrixXd::Identity(2, 2), MatrixXd::Zero(2, 2)),
                    std::invalid_argument);
    MatrixXd bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS((void)qm_symbol(MatrixXd::Zero(2, 2), bad),
                    std::invalid_argument);
  }
}

TEST_CASE("frequencies") {
  SUBCASE("1D harmonic oscillator") {
    // p = xi^2 + x^2 -> Q = I, spectrum of J is +-i
    const QuadraticSymbol p =
        QuadraticSymbol::homogeneous(1, MatrixXcd::Identity(2, 2));
    const VectorXd w = frequencies(p);
    CHECK(w.size() == 1);
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("periodic preset frequencies") {
    const Preset p = make_preset("qm3d-periodic");
    const VectorXd w = frequencies(p.symbol());
    const Eigen::Vector3d expect = kPi / 180.0 * Eigen::Vector3d(20, 75, 132);
    CHECK((w - expect).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("indefinite forms are rejected") {
    MatrixXcd q = MatrixXcd::Identity(2, 2);
    q(0, 0) = -1;
    CHECK_THROWS_AS((void)frequencies(QuadraticSymbol::homogeneous(1, q)),
                    std::domain_error);
  }

  SUBCASE("invariance under symplectic conjugation") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    const Preset preset = make_preset("qm3d-periodic");
    const VectorXd w0 = frequencies(preset.symbol());
    const MatrixXd j = standard_symplectic(3);
    for (int trial = 0; trial < 10; ++trial) {
      // random symplectic map from generators e^{J S}
      MatrixXd p = MatrixXd::Identity(6, 6);
      for (int g = 0; g < 3; ++g) {
        MatrixXd s(6, 6);
        for (int i = 0; i < 36; ++i) s(i / 6, i % 6) = 0.15 * nd(rng);
        s = (0.5 * (s + s.transpose())).eval();
        p = p * mat_exp((j * s).cast<cplx>()).real();
      }
      QuadraticSymbol conj = preset.symbol();
      conj.Q = (p.transpose() * conj.Q.imag() * p).cast<cplx>() * cplx(0, 1);
      const VectorXd w = frequencies(conj);
      CHECK((w - w0).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("characteristic polynomial of the periodic model") {
  const Preset p = make_preset("qm3d-periodic");
  const MatrixXd w =
      3.0 / kPi * standard_symplectic(3) * real_hamiltonian_form(p.symbol());
  const VectorXd coeffs = char_poly(w);

  // oracle: expand prod (X^2 + (3 w_j / pi)^2) from the verified frequencies
  const Eigen::Vector3d s2{1.0 / 9.0, 25.0 / 16.0, 121.0 / 25.0};
  VectorXd expect = VectorXd::Zero(7);
  expect[6] = 1;
  expect[4] = s2.sum();
  expect[2] = s2[0] * s2[1] + s2[0] * s2[2] + s2[1] * s2[2];
  expect[0] = s2.prod();
  CHECK((coeffs - expect).cwiseAbs().maxCoeff() < 1e-10);

  // same values from the cubic's symmetric functions
  const double e1 = 72196.0 / 7200.0, e2 = 222088.0 / 7200.0, e3 = 216341.0 / 7200.0;
  CHECK(expect[4] == doctest::Approx((e1 + 3) / 2).epsilon(1e-13));
  CHECK(expect[2] == doctest::Approx((e2 + 2.25) / 4).epsilon(1e-13));
  CHECK(expect[0] ==
        doctest::Approx(3 * e1 / 32 - (e2 - e3) / 8).epsilon(1e-13));
}

TEST_CASE("periodic lambdas solve the cubic") {
  const Eigen::Vector3d lam = periodic_lambdas();
  for (int j = 0; j < 3; ++j) {
    const double x = lam[j];
    const double f = ((7200 * x - 72196) * x + 222088) * x - 216341;
    CHECK(std::abs(f) < 1e-8);
  }
  CHECK(lam[0] == doctest::Approx(2.27017996551810).epsilon(1e-13));
  CHECK(lam[1] == doctest::Approx(2.53418020791380).epsilon(1e-13));
  CHECK(lam[2] == doctest::Approx(5.22286204879033).epsilon(1e-13));
}
