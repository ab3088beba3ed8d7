#include "qsplit/grid.hpp"

#include "qsplit/fft.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using Eigen::VectorXd;
using namespace qsplit;

namespace {
constexpr double kPi = std::numbers::pi;

Field random_field(const GridSpec& g, std::uint64_t seed) {
  Field f = Field::zero(g);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  for (std::int64_t i = 0; i < f.values.size(); ++i)
    f.values[i] = cplx(nd(rng), nd(rng));
  return f;
}

// O(N^2) partial transform straight from the definition, in bin order
Field direct_forward(const Field& f, int axis) {
  Field out = f;
  out.axis_state[axis] = AxisState::frequency;
  const int len = f.spec.points[axis];
  const double h = f.spec.step(axis);
  const Eigen::ArrayXd g = node_table(f.spec, axis, AxisState::physical);
  const Eigen::ArrayXd w = node_table(f.spec, axis, AxisState::frequency);
  const std::int64_t stride = f.spec.stride(axis);
  const std::int64_t block = stride * len;
  for (std::int64_t base = 0; base < f.spec.size(); base += block)
    for (std::int64_t i = 0; i < stride; ++i)
      for (int kb = 0; kb < len; ++kb) {
        cplx acc = 0;
        for (int mb = 0; mb < len; ++mb)
          acc += f.values[base + mb * stride + i] *
                 std::exp(cplx(0, -g[mb] * w[kb]));
        out.values[base + kb * stride + i] = h * acc;
      }
  return out;
}

}  // namespace

TEST_CASE("grid node sets") {
  const GridSpec g4 = GridSpec::make({4}, {1.0});
  const Eigen::ArrayXd nodes = grid_nodes(g4, 0, AxisState::physical);
  CHECK(nodes.size() == 4);
  CHECK(nodes[0] == doctest::Approx(-0.5));
  CHECK(nodes[1] == doctest::Approx(0.0));
  CHECK(nodes[2] == doctest::Approx(0.5));
  CHECK(nodes[3] == doctest::Approx(1.0));

  const GridSpec g2 = GridSpec::make({2}, {kPi});
  const Eigen::ArrayXd dual = grid_nodes(g2, 0, AxisState::frequency);
  CHECK(g2.dual_step(0) == doctest::Approx(1.0));
  CHECK(dual[0] == doctest::Approx(0.0));
  CHECK(dual[1] == doctest::Approx(1.0));

  const GridSpec g5 = GridSpec::make({5}, {2.5});
  const Eigen::ArrayXd n5 = grid_nodes(g5, 0, AxisState::physical);
  for (int k = 0; k < 5; ++k) CHECK(n5[k] == doctest::Approx(k - 2.0));

  CHECK_THROWS_AS((void)grid_nodes(g5, 1, AxisState::physical), std::out_of_range);
  CHECK_THROWS_AS((void)GridSpec::make({1}, {1.0}), std::invalid_argument);
}

TEST_CASE("bin-order node table matches the signed-index convention") {
  const GridSpec g = GridSpec::make({4}, {1.0});
  const Eigen::ArrayXd t = node_table(g, 0, AxisState::physical);
  CHECK(t[0] == doctest::Approx(0.0));
  CHECK(t[1] == doctest::Approx(0.5));
  CHECK(t[2] == doctest::Approx(1.0));
  CHECK(t[3] == doctest::Approx(-0.5));
}

TEST_CASE("forward transform of a constant concentrates at zero frequency") {
  const GridSpec g = GridSpec::make({4}, {1.0});
  Field f = Field::zero(g);
  f.values.setOnes();
  PartialFourier fft;
  fft.forward(f, 0);
  CHECK(f.values[0].real() == doctest::Approx(2.0).epsilon(1e-14));
  for (int k = 1; k < 4; ++k) CHECK(std::abs(f.values[k]) < 1e-14);
}

TEST_CASE("transform matches the direct summation oracle") {
  for (int n : {4, 5, 7, 8}) {
    const GridSpec g = GridSpec::make({n, 6}, {1.3, 2.0});
    Field f = random_field(g, 77 + n);
    Field expect = direct_forward(f, 0);
    PartialFourier fft;
    fft.forward(f, 0);
    CHECK((f.values - expect.values).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("oscillating mode lands on its dual node") {
  const int n = 8;
  const GridSpec g = GridSpec::make({n}, {1.7});
  const double eta = g.dual_step(0);
  Field f = Field::zero(g);
  const Eigen::ArrayXd x = node_table(g, 0, AxisState::physical);
  for (int m = 0; m < n; ++m) f.values[m] = std::exp(cplx(0, eta * x[m]));
  PartialFourier fft;
  fft.forward(f, 0);
  // bin 1 carries the signed index +1, i.e. omega = eta
  CHECK(std::abs(f.values[1] - cplx(n * g.step(0), 0)) < 1e-13);
  for (int k = 0; k < n; ++k)
    if (k != 1) CHECK(std::abs(f.values[k]) < 1e-13);
}

TEST_CASE("round trip and Plancherel") {
  const GridSpec g = GridSpec::make({12, 9}, {2.0, 3.5});
  const Field f0 = random_field(g, 5);
  Field f = f0;
  PartialFourier fft;
  for (int a = 0; a < 2; ++a) {
    const double before = f.norm_sq();
    fft.forward(f, a);
    CHECK(f.norm_sq() == doctest::Approx(before).epsilon(1e-12));
    fft.inverse(f, a);
  }
  CHECK((f.values - f0.values).cwiseAbs().maxCoeff() /
            f0.values.cwiseAbs().maxCoeff() <
        1e-13);
  CHECK(fft.transform_count() == 4);
}

TEST_CASE("transforms along distinct axes commute") {
  const GridSpec g = GridSpec::make({8, 10}, {1.0, 2.0});
  PartialFourier fft;
  Field a = random_field(g, 9);
  Field b = a;
  fft.forward(a, 0);
  fft.forward(a, 1);
  fft.forward(b, 1);
  fft.forward(b, 0);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("state preconditions are enforced") {
  const GridSpec g = GridSpec::make({4}, {1.0});
  Field f = Field::zero(g);
  PartialFourier fft;
  CHECK_THROWS_AS(fft.inverse(f, 0), std::invalid_argument);
  fft.forward(f, 0);
  CHECK_THROWS_AS(fft.forward(f, 0), std::invalid_argument);
}

TEST_CASE("pointwise multipliers") {
  const GridSpec g = GridSpec::make({6, 6}, {1.0, 1.0});
  Field f = random_field(g, 13);

  SUBCASE("identity multiplier") {
    Field h = f;
    pointwise_multiply(h, [](const VectorXd&) { return cplx(1, 0); });
    CHECK((h.values - f.values).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("constant scale") {
    Field h = f;
    const double t = 0.4;
    pointwise_multiply(h, [&](const VectorXd&) { return cplx(std::exp(t / 2), 0); });
    CHECK((h.values - std::exp(t / 2) * f.values).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("unimodular multipliers preserve the norm") {
    Field h = f;
    const double before = h.norm_sq();
    pointwise_multiply(h, [](const VectorXd& x) {
      return std::exp(cplx(0, std::sin(3 * x[0]) + x[1] * x[1]));
    });
    CHECK(h.norm_sq() == doctest::Approx(before).epsilon(1e-13));
    for (std::int64_t i = 0; i < h.values.size(); ++i)
      CHECK(std::norm(h.values[i]) ==
            doctest::Approx(std::norm(f.values[i])).epsilon(1e-12));
  }
}
