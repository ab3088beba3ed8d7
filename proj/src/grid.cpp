#include "qsplit/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsplit {

double GridSpec::dual_step(int axis) const {
  return std::numbers::pi / half_widths[axis];
}

std::int64_t GridSpec::size() const {
  std::int64_t s = 1;
  for (int a = 0; a < dims(); ++a) s *= points[a];
  return s;
}

std::int64_t GridSpec::stride(int axis) const {
  std::int64_t s = 1;
  for (int a = dims() - 1; a > axis; --a) s *= points[a];
  return s;
}

GridSpec GridSpec::make(std::vector<int> n, std::vector<double> r) {
  if (n.size() != r.size() || n.empty())
    throw std::invalid_argument("grid: points/half_widths size mismatch");
  GridSpec g;
  g.points = Eigen::Map<Eigen::ArrayXi>(n.data(), static_cast<int>(n.size()));
  g.half_widths = Eigen::Map<Eigen::ArrayXd>(r.data(), static_cast<int>(r.size()));
  for (int a = 0; a < g.dims(); ++a) {
    if (g.points[a] < 2) throw std::invalid_argument("grid: N < 2");
    if (!(g.half_widths[a] > 0)) throw std::invalid_argument("grid: R <= 0");
  }
  return g;
}

GridSpec GridSpec::uniform(int dims, int n, double r) {
  return make(std::vector<int>(dims, n), std::vector<double>(dims, r));
}

Eigen::ArrayXd grid_nodes(const GridSpec& spec, int axis, AxisState state) {
  if (axis < 0 || axis >= spec.dims()) throw std::out_of_range("grid_nodes: axis");
  const int n = spec.points[axis];
  const double step = state == AxisState::physical ? spec.step(axis) : spec.dual_step(axis);
  Eigen::ArrayXd out(n);
  const int lo = -((n - 1) / 2);
  for (int k = 0; k < n; ++k) out[k] = step * (lo + k);
  return out;
}

Eigen::ArrayXd node_table(const GridSpec& spec, int axis, AxisState state) {
  if (axis < 0 || axis >= spec.dims()) throw std::out_of_range("node_table: axis");
  const int n = spec.points[axis];
  const double step = state == AxisState::physical ? spec.step(axis) : spec.dual_step(axis);
  Eigen::ArrayXd out(n);
  for (int m = 0; m < n; ++m) out[m] = step * signed_index(m, n);
  return out;
}

Field Field::zero(const GridSpec& spec) {
  Field f;
  f.spec = spec;
  f.axis_state.assign(spec.dims(), AxisState::physical);
  f.values = Eigen::VectorXcd::Zero(spec.size());
  return f;
}

bool Field::all_physical() const {
  for (auto s : axis_state)
    if (s != AxisState::physical) return false;
  return true;
}

double Field::axis_weight(int axis) const {
  return axis_state[axis] == AxisState::physical
             ? spec.step(axis)
             : spec.dual_step(axis) / (2.0 * std::numbers::pi);
}

double Field::weight() const {
  double w = 1;
  for (int a = 0; a < spec.dims(); ++a) w *= axis_weight(a);
  return w;
}

double pairwise_sum(const double* data, std::int64_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::int64_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::int64_t h = n / 2;
  return pairwise_sum(data, h) + pairwise_sum(data + h, n - h);
}

namespace {
double pairwise_sum_fn(const std::function<double(std::int64_t)>& term,
                       std::int64_t lo, std::int64_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::int64_t i = 0; i < n; ++i) s += term(lo + i);
    return s;
  }
  const std::int64_t h = n / 2;
  return pairwise_sum_fn(term, lo, h) + pairwise_sum_fn(term, lo + h, n - h);
}
}  // namespace

double pairwise_sum(const std::function<double(std::int64_t)>& term, std::int64_t n) {
  return pairwise_sum_fn(term, 0, n);
}

double Field::norm_sq() const {
  const cplx* v = values.data();
  return weight() * pairwise_sum([v](std::int64_t i) { return std::norm(v[i]); },
                                 values.size());
}

double Field::norm() const { return std::sqrt(norm_sq()); }

void pointwise_multiply(Field& f,
                        const std::function<cplx(const Eigen::VectorXd&)>& m) {
  for_each_node(f.spec, f.axis_state, [&](std::int64_t lin, const Eigen::VectorXd& coords) {
    f.values[lin] *= m(coords);
  });
}

double quadrature(const Field& f,
                  const std::function<double(const Eigen::VectorXd&, cplx)>& density) {
  std::vector<double> cell(f.spec.size());
  for_each_node(f.spec, f.axis_state, [&](std::int64_t lin, const Eigen::VectorXd& coords) {
    cell[lin] = density(coords, f.values[lin]);
  });
  return f.weight() * pairwise_sum(cell.data(), static_cast<std::int64_t>(cell.size()));
}

}  // namespace qsplit
