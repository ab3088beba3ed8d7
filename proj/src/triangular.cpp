#include "qsplit/triangular.hpp"

#include "qsplit/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsplit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd row_shear_flow(int n, const MatrixXd& w, int j, double t) {
  MatrixXd f = MatrixXd::Identity(2 * n, 2 * n);
  for (int c = 0; c < n; ++c) {
    f(j, c) += t * w(j, c);
    f(n + c, n + j) -= t * w(j, c);
  }
  return f;
}

MatrixXd factor_product(int n, const MatrixXd& a, const MatrixXd& l,
                        const MatrixXd& u, const MatrixXd& vm, double t) {
  MatrixXd p = MatrixXd::Identity(2 * n, 2 * n);
  for (int j = 0; j < n - 1; ++j) p = p * row_shear_flow(n, u, j, t);
  MatrixXd fa = MatrixXd::Identity(2 * n, 2 * n);
  fa.block(0, n, n, n) = 2.0 * t * a;
  p = p * fa;
  for (int j = 1; j < n; ++j) p = p * row_shear_flow(n, l, j, t);
  MatrixXd fv = MatrixXd::Identity(2 * n, 2 * n);
  fv.block(n, 0, n, n) = -2.0 * t * vm;
  return p * fv;
}

MatrixXd strict_lower(const MatrixXd& b) {
  return b.triangularView<Eigen::StrictlyLower>();
}
MatrixXd strict_upper(const MatrixXd& b) {
  return b.triangularView<Eigen::StrictlyUpper>();
}

TriangularSplitting assemble(int n, double t, const MatrixXd& a, const MatrixXd& l,
                             const MatrixXd& u, const MatrixXd& vm,
                             const VectorXd& d, double c) {
  TriangularSplitting s;
  s.n = n;
  s.t = t;
  s.A = 0.5 * (a + a.transpose());
  s.L = l;
  s.U = u;
  s.v_left = -c * d;
  s.v_right = vm + c * d.asDiagonal().toDenseMatrix();
  return s;
}

}  // namespace

SplittingPlan TriangularSplitting::to_plan() const {
  SplittingPlan plan;
  plan.dims = n;
  plan.provenance = "triangular factorization of the quadratic flow";
  plan.exactness = Exactness::exact_in_time;
  auto& fs = plan.factors;
  MatrixXd vl = v_left.asDiagonal();
  fs.push_back(ElementaryFactor::quadratic_phase(-t * v_right));
  for (int j = n - 1; j >= 1; --j)
    for (int k = 0; k < j; ++k)
      if (L(j, k) != 0.0) fs.push_back(ElementaryFactor::shear(j, k, -t * L(j, k)));
  fs.push_back(ElementaryFactor::fourier_quadratic(t * A));
  for (int j = n - 2; j >= 0; --j)
    for (int k = j + 1; k < n; ++k)
      if (U(j, k) != 0.0) fs.push_back(ElementaryFactor::shear(j, k, -t * U(j, k)));
  fs.push_back(ElementaryFactor::quadratic_phase(-t * vl));
  return plan;
}

TriangularSplitting triangular_split(const MatrixXd& b, const MatrixXd& vm_in,
                                     double t) {
  const int n = static_cast<int>(b.rows());
  if (b.cols() != n || vm_in.rows() != n || vm_in.cols() != n)
    throw std::invalid_argument("triangular_split: dimension mismatch");
  if ((b + b.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * (1.0 + b.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("triangular_split: B not skew-symmetric");
  const MatrixXd vm0 = 0.5 * (vm_in + vm_in.transpose());

  if (t == 0.0) {
    // limit coefficients: the phase weight splits evenly on the diagonal
    VectorXd d = -vm0.diagonal();
    TriangularSplitting s = assemble(n, 0.0, 0.5 * MatrixXd::Identity(n, n),
                                     strict_lower(b), strict_upper(b), vm0, d, 0.5);
    s.t = 0.0;
    return s;
  }

  MatrixXd a = 0.5 * MatrixXd::Identity(n, n);
  MatrixXd l = strict_lower(b), u = strict_upper(b);
  const MatrixXd l0 = l, u0 = u;
  MatrixXd vm = vm0;
  VectorXd d = VectorXd::Zero(n);
  const MatrixXd jmat = standard_symplectic(n);

  TriangularSplitting out;
  out.n = n;
  out.t = t;

  bool converged = false;
  const int max_iter = 100;
  for (int k = 0; k < max_iter; ++k) {
    MatrixXd p = factor_product(n, a, l, u, vm, t);
    MatrixXd logp;
    try {
      logp = mat_log_principal(p.cast<cplx>()).real();
    } catch (const std::domain_error&) {
      throw std::domain_error("dt beyond splitting radius; reduce step");
    }
    MatrixXd r = -(1.0 / t) * jmat * logp;
    // blocks: [[2 Vm~, L~^T + U~^T + tD], [L~ + U~ + tD, 2 A~]]
    MatrixXd vt = 0.5 * r.block(0, 0, n, n);
    MatrixXd at = 0.5 * r.block(n, n, n, n);
    MatrixXd off = r.block(n, 0, n, n);
    MatrixXd lt = strict_lower(off), ut = strict_upper(off);
    d = off.diagonal() / t;

    MatrixXd da = 0.5 * MatrixXd::Identity(n, n) - at;
    MatrixXd dl = l0 - lt;
    MatrixXd du = u0 - ut;
    MatrixXd dd = d.asDiagonal();
    MatrixXd dv = vm0 - vt + 0.5 * t * (dd * b - b * dd) + 0.5 * t * t * dd * dd;
    a += da;
    l += dl;
    u += du;
    vm += dv;
    const double res = std::max({da.cwiseAbs().maxCoeff(), dl.cwiseAbs().maxCoeff(),
                                 du.cwiseAbs().maxCoeff(), dv.cwiseAbs().maxCoeff()});
    out.residual_history.push_back(res);
    out.iterations = k + 1;
    if (!std::isfinite(res) || res > 1e8)
      throw std::domain_error("dt beyond splitting radius; reduce step");
    if (res < 1e-14) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw std::domain_error("dt beyond splitting radius; reduce step");

  // Two candidate scalings of the diagonal correction; keep the one that
  // satisfies the matrix identity.
  const QuadraticSymbol target = qm_symbol(b, vm0);
  TriangularSplitting best;
  double best_res = std::numeric_limits<double>::infinity();
  for (double c : {0.5, 0.5 * t}) {
    TriangularSplitting cand = assemble(n, t, a, l, u, vm, d, c);
    const double res = verify_plan(cand.to_plan(), target, t).matrix;
    if (res < best_res) {
      best_res = res;
      best = cand;
    }
  }
  best.iterations = out.iterations;
  best.residual_history = out.residual_history;
  best.identity_residual = best_res;
  if (!(best_res <= 1e-10))
    throw std::runtime_error("triangular_split: internal consistency failure");
  return best;
}

TriangularSplitting triangular_split(const QuadraticSymbol& p, double t) {
  const int n = p.n;
  const MatrixXd qi = p.Q.imag();
  if (p.Q.real().cwiseAbs().maxCoeff() > 1e-12 * (1.0 + p.Q.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("triangular_split: symbol is not Schroedinger type");
  const MatrixXd kin = qi.block(n, n, n, n);
  if ((kin - 0.5 * MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("triangular_split: kinetic part must be |xi|^2/2");
  const MatrixXd b = 2.0 * qi.block(n, 0, n, n);
  const MatrixXd vm = qi.block(0, 0, n, n);
  return triangular_split(b, vm, t);
}

}  // namespace qsplit
