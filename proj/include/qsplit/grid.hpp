#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace qsplit {

using cplx = std::complex<double>;

/// Per-axis representation of a field: sampled on the spatial grid or on its
/// dual (frequency) grid.
enum class AxisState : std::uint8_t { physical = 0, frequency = 1 };

/// Tensor-product grid on the truncated box [-R_1,R_1] x ... x [-R_n,R_n].
/// Axis j carries N_j nodes with step h_j = 2 R_j / N_j; the dual grid has
/// step eta_j = pi / R_j. Node indices run over the signed range
/// [-floor((N-1)/2), floor(N/2)].
struct GridSpec {
  Eigen::ArrayXi points;       // N_j >= 2
  Eigen::ArrayXd half_widths;  // R_j > 0

  int dims() const { return static_cast<int>(points.size()); }
  double step(int axis) const { return 2.0 * half_widths[axis] / points[axis]; }
  double dual_step(int axis) const;

  std::int64_t size() const;
  /// Row-major storage, last axis fastest-varying.
  std::int64_t stride(int axis) const;

  static GridSpec make(std::vector<int> n, std::vector<double> r);
  static GridSpec uniform(int dims, int n, double r);

  bool operator==(const GridSpec& o) const {
    return (points == o.points).all() && (half_widths == o.half_widths).all();
  }
};

/// Signed node index of FFT bin m on an axis with N points.
inline int signed_index(int m, int n_points) {
  return m <= n_points / 2 ? m : m - n_points;
}

/// Node coordinates in signed-index order (monotone increasing).
Eigen::ArrayXd grid_nodes(const GridSpec& spec, int axis, AxisState state);

/// Node coordinates in storage (FFT bin) order.
Eigen::ArrayXd node_table(const GridSpec& spec, int axis, AxisState state);

/// Complex scalar field sampled on a grid, each axis independently in
/// physical or frequency representation. Values are stored row-major in FFT
/// bin order; bin m on an axis corresponds to the signed node index
/// signed_index(m, N).
struct Field {
  GridSpec spec;
  std::vector<AxisState> axis_state;
  Eigen::VectorXcd values;

  static Field zero(const GridSpec& spec);

  bool all_physical() const;

  /// Discrete L^2 weight of one axis in its current representation
  /// (h_j when physical, eta_j / (2 pi) when in frequency).
  double axis_weight(int axis) const;
  /// Product of the per-axis weights.
  double weight() const;

  /// Weighted squared L^2 norm (pairwise-tree summation, layout independent).
  double norm_sq() const;
  double norm() const;
};

/// Deterministic pairwise-tree reduction used by all quadratures.
double pairwise_sum(const double* data, std::int64_t n);
double pairwise_sum(const std::function<double(std::int64_t)>& term, std::int64_t n);

/// Walks all nodes in storage order, passing the linear index and the node
/// coordinate vector under the given per-axis representations.
template <class Body>
void for_each_node(const GridSpec& grid, const std::vector<AxisState>& state,
                   Body&& body) {
  const int n = grid.dims();
  std::vector<Eigen::ArrayXd> tables(n);
  for (int a = 0; a < n; ++a) tables[a] = node_table(grid, a, state[a]);
  Eigen::VectorXd coords(n);
  std::vector<int> idx(n, 0);
  for (int a = 0; a < n; ++a) coords[a] = tables[a][0];
  const std::int64_t total = grid.size();
  for (std::int64_t lin = 0; lin < total; ++lin) {
    body(lin, coords);
    for (int a = n - 1; a >= 0; --a) {
      if (++idx[a] < grid.points[a]) {
        coords[a] = tables[a][idx[a]];
        break;
      }
      idx[a] = 0;
      coords[a] = tables[a][0];
    }
  }
}

/// Multiply f nodewise by m evaluated at the current mixed physical/frequency
/// node coordinates. axis_state is unchanged.
void pointwise_multiply(Field& f, const std::function<cplx(const Eigen::VectorXd&)>& m);

/// Evaluate a nodewise functional over the field (coords, value) -> double and
/// return the weighted pairwise-tree sum (the rectangle-rule quadrature).
double quadrature(const Field& f,
                  const std::function<double(const Eigen::VectorXd&, cplx)>& density);

}  // namespace qsplit
