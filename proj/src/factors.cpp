#include "qsplit/factors.hpp"

#include "qsplit/matfun.hpp"

#include <stdexcept>

namespace qsplit {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

namespace {

MatrixXd symmetrized(const MatrixXd& a, const char* who) {
  if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": non-square form");
  return 0.5 * (a + a.transpose());
}

void require_psd(const MatrixXd& b, const char* who) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(b);
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -1e-12 * scale)
    throw std::invalid_argument(std::string(who) + ": form must be nonnegative");
}

}  // namespace

ElementaryFactor ElementaryFactor::translation(int j, double a) {
  ElementaryFactor f;
  f.kind = FactorKind::translation;
  f.axis_j = j;
  f.alpha = a;
  return f;
}

ElementaryFactor ElementaryFactor::linear_phase(int j, double a) {
  ElementaryFactor f;
  f.kind = FactorKind::linear_phase;
  f.axis_j = j;
  f.alpha = a;
  return f;
}

ElementaryFactor ElementaryFactor::fourier_quadratic(const MatrixXd& a) {
  ElementaryFactor f;
  f.kind = FactorKind::fourier_quadratic;
  f.form = symmetrized(a, "fourier_quadratic");
  return f;
}

ElementaryFactor ElementaryFactor::quadratic_phase(const MatrixXd& a) {
  ElementaryFactor f;
  f.kind = FactorKind::quadratic_phase;
  f.form = symmetrized(a, "quadratic_phase");
  return f;
}

ElementaryFactor ElementaryFactor::shear(int j, int k, double a) {
  if (j == k) throw std::invalid_argument("shear: k must differ from j");
  ElementaryFactor f;
  f.kind = FactorKind::shear;
  f.axis_j = j;
  f.axis_k = k;
  f.alpha = a;
  return f;
}

ElementaryFactor ElementaryFactor::gaussian_decay(const MatrixXd& b) {
  ElementaryFactor f;
  f.kind = FactorKind::gaussian_decay;
  f.form = symmetrized(b, "gaussian_decay");
  require_psd(f.form, "gaussian_decay");
  return f;
}

ElementaryFactor ElementaryFactor::fourier_gaussian(const MatrixXd& b) {
  ElementaryFactor f;
  f.kind = FactorKind::fourier_gaussian;
  f.form = symmetrized(b, "fourier_gaussian");
  require_psd(f.form, "fourier_gaussian");
  return f;
}

ElementaryFactor ElementaryFactor::scalar(cplx g) {
  ElementaryFactor f;
  f.kind = FactorKind::scalar;
  f.gamma = g;
  return f;
}

MatrixXcd factor_flow(const ElementaryFactor& f, int dims) {
  const int n = dims;
  MatrixXcd flow = MatrixXcd::Identity(2 * n, 2 * n);
  const cplx i(0, 1);
  switch (f.kind) {
    case FactorKind::translation:
    case FactorKind::linear_phase:
    case FactorKind::scalar:
      break;  // affine / phase only, no quadratic part
    case FactorKind::fourier_quadratic:
      flow.block(0, n, n, n) = 2.0 * f.form.cast<cplx>();
      break;
    case FactorKind::quadratic_phase:
      flow.block(n, 0, n, n) = 2.0 * f.form.cast<cplx>();
      break;
    case FactorKind::fourier_gaussian:
      flow.block(0, n, n, n) = -2.0 * i * f.form.cast<cplx>();
      break;
    case FactorKind::gaussian_decay:
      flow.block(n, 0, n, n) = 2.0 * i * f.form.cast<cplx>();
      break;
    case FactorKind::shear:
      flow(f.axis_j, f.axis_k) -= f.alpha;
      flow(n + f.axis_k, n + f.axis_j) += f.alpha;
      break;
  }
  return flow;
}

cplx plan_scalar(const SplittingPlan& plan) {
  cplx s(1, 0);
  for (const auto& f : plan.factors)
    if (f.kind == FactorKind::scalar) s *= std::exp(f.gamma);
  return s;
}

PlanResidual verify_plan(const SplittingPlan& plan, const QuadraticSymbol& target,
                         double t) {
  const int n = plan.dims;
  MatrixXcd total = MatrixXcd::Identity(2 * n, 2 * n);
  for (const auto& f : plan.factors) total = factor_flow(f, n) * total;
  const MatrixXcd expect = hamiltonian_flow(target, t).matrix;
  PlanResidual r;
  r.matrix = (total - expect).cwiseAbs().maxCoeff();
  r.scalar = std::abs(plan_scalar(plan) - std::exp(-t * target.c));
  return r;
}

}  // namespace qsplit
