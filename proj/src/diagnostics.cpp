#include "qsplit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace qsplit {

using Eigen::VectorXd;

void DiagnosticSeries::set_columns(std::vector<std::string> names) {
  columns = std::move(names);
  data.assign(columns.size(), {});
}

void DiagnosticSeries::add_row(double t, const std::vector<double>& values) {
  if (values.size() != columns.size())
    throw std::invalid_argument("DiagnosticSeries: row width mismatch");
  times.push_back(t);
  for (std::size_t c = 0; c < values.size(); ++c) data[c].push_back(values[c]);
}

const std::vector<double>& DiagnosticSeries::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == name) return data[c];
  throw std::invalid_argument("DiagnosticSeries: no column " + name);
}

std::string DiagnosticSeries::to_csv() const {
  std::string out = "time";
  for (const auto& c : columns) out += "," + c;
  out += "\n";
  char buf[64];
  for (std::size_t r = 0; r < times.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%.17g", times[r]);
    out += buf;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::snprintf(buf, sizeof buf, ",%.17g", data[c][r]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

double l2_error(const Field& numeric,
                const std::function<cplx(const VectorXd&)>& exact) {
  if (!numeric.all_physical())
    throw std::invalid_argument("l2_error: field must be physical");
  const double s = quadrature(numeric, [&](const VectorXd& x, cplx v) {
    return std::norm(v - exact(x));
  });
  return std::sqrt(s);
}

double mass(const Field& psi) {
  if (!psi.all_physical()) throw std::invalid_argument("mass: field must be physical");
  return psi.norm_sq();
}

Field partial_derivative(const Field& f, int axis, PartialFourier& fft) {
  if (!f.all_physical())
    throw std::invalid_argument("partial_derivative: field must be physical");
  Field g = f;
  fft.forward(g, axis);
  const Eigen::ArrayXd w = node_table(g.spec, axis, AxisState::frequency);
  const std::int64_t stride = g.spec.stride(axis);
  const std::int64_t block = stride * g.spec.points[axis];
  const std::int64_t total = g.spec.size();
  for (std::int64_t base = 0; base < total; base += block)
    for (int m = 0; m < g.spec.points[axis]; ++m) {
      const cplx iw(0, w[m]);
      for (std::int64_t i = 0; i < stride; ++i)
        g.values[base + m * stride + i] *= iw;
    }
  fft.inverse(g, axis);
  return g;
}

double energy(const Field& psi, const EnergyModel& model, PartialFourier& fft) {
  if (!psi.all_physical()) throw std::invalid_argument("energy: field must be physical");
  const int n = psi.spec.dims();
  std::vector<Field> grads;
  grads.reserve(n);
  for (int a = 0; a < n; ++a) grads.push_back(partial_derivative(psi, a, fft));

  const bool rot = model.W.size() > 0;
  std::vector<double> cell(psi.spec.size());
  for_each_node(psi.spec, psi.axis_state, [&](std::int64_t lin, const VectorXd& x) {
    const cplx v = psi.values[lin];
    double e = 0;
    for (int a = 0; a < n; ++a)
      e += 0.5 * model.kinetic * std::norm(grads[a].values[lin]);
    if (model.potential) e += model.potential(x) * std::norm(v);
    if (model.nonlinear) e += model.nonlinear(x, std::norm(v));
    if (rot) {
      cplx wgrad(0, 0);
      for (int a = 0; a < n; ++a) wgrad += (model.W.row(a) * x)(0) * grads[a].values[lin];
      e -= (cplx(0, 1) * wgrad * std::conj(v)).real();
    }
    cell[lin] = e;
  });
  return psi.weight() *
         pairwise_sum(cell.data(), static_cast<std::int64_t>(cell.size()));
}

AngularMomentum angular_momentum(const Field& psi, PartialFourier& fft) {
  if (psi.spec.dims() != 2)
    throw std::invalid_argument("angular_momentum: field must be 2D");
  if (!psi.all_physical())
    throw std::invalid_argument("angular_momentum: field must be physical");
  const Field d1 = partial_derivative(psi, 0, fft);
  const Field d2 = partial_derivative(psi, 1, fft);
  std::vector<double> re(psi.spec.size()), im(psi.spec.size());
  for_each_node(psi.spec, psi.axis_state, [&](std::int64_t lin, const VectorXd& x) {
    const cplx lz = cplx(0, -1) * (x[0] * d2.values[lin] - x[1] * d1.values[lin]);
    const cplx cellv = std::conj(psi.values[lin]) * lz;
    re[lin] = cellv.real();
    im[lin] = cellv.imag();
  });
  AngularMomentum out;
  const auto sz = static_cast<std::int64_t>(re.size());
  out.value = psi.weight() * pairwise_sum(re.data(), sz);
  out.imag_residual = std::abs(psi.weight() * pairwise_sum(im.data(), sz));
  return out;
}

double entropy(const Field& f) {
  if (f.spec.dims() != 2) throw std::invalid_argument("entropy: field must be 2D");
  const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return quadrature(f, [&](const VectorXd& x, cplx v) {
    const double mu = inv_sqrt2pi * std::exp(-0.5 * x[1] * x[1]);
    return std::norm(v - cplx(mu, 0)) / mu;
  });
}

CondensateMoments condensate_widths_and_center(const Field& psi) {
  if (psi.spec.dims() != 2)
    throw std::invalid_argument("condensate moments: field must be 2D");
  CondensateMoments m;
  m.s_x1 = std::sqrt(quadrature(
      psi, [](const VectorXd& x, cplx v) { return x[0] * x[0] * std::norm(v); }));
  m.s_x2 = std::sqrt(quadrature(
      psi, [](const VectorXd& x, cplx v) { return x[1] * x[1] * std::norm(v); }));
  m.center[0] =
      quadrature(psi, [](const VectorXd& x, cplx v) { return x[0] * std::norm(v); });
  m.center[1] =
      quadrature(psi, [](const VectorXd& x, cplx v) { return x[1] * std::norm(v); });
  return m;
}

double decay_rate(const DiagnosticSeries& series, const std::string& col,
                  double t0, double t1) {
  const auto& y = series.column(col);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t r = 0; r < series.times.size(); ++r) {
    const double t = series.times[r];
    if (t < t0 || t > t1) continue;
    if (!(y[r] > 0)) throw std::domain_error("decay_rate: nonpositive value in window");
    const double ly = std::log(y[r]);
    sx += t;
    sy += ly;
    sxx += t * t;
    sxy += t * ly;
    ++m;
  }
  if (m < 2) throw std::domain_error("decay_rate: window too small");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace qsplit
