#include "qsplit/shear.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qsplit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

struct Layout {
  int n, pivot;
  std::vector<int> mid_axes;  // ascending, != pivot
  int unknowns() const { return n * n - 1; }

  // unknown vector u: y_left free entries, then each mid vector's free
  // entries (ascending axis), then y_right free entries
  ShearFactorization unpack(const VectorXd& u, double t) const {
    ShearFactorization s;
    s.n = n;
    s.pivot = pivot;
    s.t = t;
    s.y_left = VectorXd::Zero(n);
    s.y_right = VectorXd::Zero(n);
    int idx = 0;
    for (int k = 0; k < n; ++k)
      if (k != pivot) s.y_left[k] = u[idx++];
    for (int axis : mid_axes) {
      VectorXd y = VectorXd::Zero(n);
      for (int k = 0; k < n; ++k)
        if (k != axis) y[k] = u[idx++];
      s.y_mid.emplace_back(axis, std::move(y));
    }
    for (int k = 0; k < n; ++k)
      if (k != pivot) s.y_right[k] = u[idx++];
    return s;
  }

  VectorXd pack(const ShearFactorization& s) const {
    VectorXd u(unknowns());
    int idx = 0;
    for (int k = 0; k < n; ++k)
      if (k != pivot) u[idx++] = s.y_left[k];
    for (const auto& [axis, y] : s.y_mid)
      for (int k = 0; k < n; ++k)
        if (k != axis) u[idx++] = y[k];
    for (int k = 0; k < n; ++k)
      if (k != pivot) u[idx++] = s.y_right[k];
    return u;
  }
};

MatrixXd shear_matrix(int n, int axis, const VectorXd& y, double t) {
  MatrixXd a = MatrixXd::Identity(n, n);
  for (int k = 0; k < n; ++k) a(axis, k) += t * y[k];
  return a;
}

MatrixXd reconstruct_from(const ShearFactorization& s) {
  MatrixXd p = shear_matrix(s.n, s.pivot, s.y_right, s.t);
  for (auto it = s.y_mid.rbegin(); it != s.y_mid.rend(); ++it)
    p = p * shear_matrix(s.n, it->first, it->second, s.t);
  return p * shear_matrix(s.n, s.pivot, s.y_left, s.t);
}

VectorXd residual_vec(const Layout& lay, const VectorXd& u, double t,
                      const MatrixXd& target) {
  MatrixXd r = reconstruct_from(lay.unpack(u, t)) - target;
  return Eigen::Map<VectorXd>(r.data(), r.size());
}

// Newton from the given start; returns true on residual <= tol.
bool newton(const Layout& lay, double t, const MatrixXd& target, VectorXd& u,
            double tol) {
  const int m = lay.n * lay.n;
  for (int it = 0; it < 50; ++it) {
    VectorXd r = residual_vec(lay, u, t, target);
    const double rn = r.cwiseAbs().maxCoeff();
    if (rn < tol) return true;
    if (!std::isfinite(rn) || rn > 1e6) return false;
    MatrixXd jac(m, lay.unknowns());
    const double h = 1e-7;
    for (int c = 0; c < lay.unknowns(); ++c) {
      VectorXd up = u;
      up[c] += h;
      jac.col(c) = (residual_vec(lay, up, t, target) - r) / h;
    }
    u += jac.colPivHouseholderQr().solve(-r);
  }
  return residual_vec(lay, u, t, target).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

MatrixXd ShearFactorization::reconstruct() const { return reconstruct_from(*this); }

SplittingPlan ShearFactorization::to_plan() const {
  SplittingPlan plan;
  plan.dims = n;
  plan.provenance = "shear factorization of e^{tM}";
  plan.exactness = Exactness::exact_in_time;
  auto emit = [&](int axis, const VectorXd& y) {
    for (int k = 0; k < n; ++k)
      if (k != axis && y[k] != 0.0)
        plan.factors.push_back(ElementaryFactor::shear(axis, k, t * y[k]));
  };
  // application order: right factor first, middle in descending axis, left last
  emit(pivot, y_right);
  for (auto it = y_mid.rbegin(); it != y_mid.rend(); ++it) emit(it->first, it->second);
  emit(pivot, y_left);
  return plan;
}

ShearFactorization shear_factorize(const Eigen::MatrixXd& m, double t,
                                   std::optional<int> pivot_override) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n || n < 2) throw std::invalid_argument("shear_factorize: bad M");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i)
    if (std::abs(m(i, i)) > 1e-14 * scale)
      throw std::invalid_argument("shear_factorize: M must have zero diagonal");

  auto admissible = [&](int i) {
    for (int j = 0; j < n; ++j)
      if (j != i && m(j, i) == 0.0) return false;
    return true;
  };
  int pivot = -1;
  if (pivot_override) {
    if (*pivot_override < 0 || *pivot_override >= n || !admissible(*pivot_override))
      throw std::invalid_argument("shear_factorize: condition (3.2) violated");
    pivot = *pivot_override;
  } else {
    for (int i = 0; i < n && pivot < 0; ++i)
      if (admissible(i)) pivot = i;
    if (pivot < 0)
      throw std::invalid_argument("shear_factorize: condition (3.2) violated");
  }

  Layout lay;
  lay.n = n;
  lay.pivot = pivot;
  for (int k = 0; k < n; ++k)
    if (k != pivot) lay.mid_axes.push_back(k);

  // first-order seed: middle vectors are the matching rows of M, the pivot
  // row splits evenly between the flank factors
  ShearFactorization seed;
  seed.n = n;
  seed.pivot = pivot;
  seed.t = t;
  seed.y_left = 0.5 * m.row(pivot).transpose();
  seed.y_left[pivot] = 0;
  seed.y_right = seed.y_left;
  for (int axis : lay.mid_axes) {
    VectorXd y = m.row(axis).transpose();
    y[axis] = 0;
    seed.y_mid.emplace_back(axis, std::move(y));
  }
  VectorXd u = lay.pack(seed);

  const double tol = 1e-13;
  // continuation ladder: if Newton fails at t, solve at t/2 first and reuse
  // the coefficients as the start
  std::function<bool(double, VectorXd&, int)> solve = [&](double tt, VectorXd& uu,
                                                          int depth) -> bool {
    MatrixXd target = (tt * m).exp();
    if (newton(lay, tt, target, uu, tol)) return true;
    if (depth >= 8) return false;
    VectorXd uhalf = lay.pack(seed);
    if (!solve(tt / 2, uhalf, depth + 1)) return false;
    uu = uhalf;
    return newton(lay, tt, target, uu, tol);
  };
  if (!solve(t, u, 0))
    throw std::domain_error("shear_factorize: t beyond factorization radius");

  ShearFactorization out = lay.unpack(u, t);
  out.residual =
      (reconstruct_from(out) - MatrixXd((t * m).exp())).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace qsplit
