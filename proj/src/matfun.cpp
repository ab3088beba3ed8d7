#include "qsplit/matfun.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <stdexcept>

namespace qsplit {

using Eigen::MatrixXcd;

namespace {

void require_square(const MatrixXcd& a, const char* who) {
  if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": non-square input");
  if (!a.allFinite()) throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

// 8-point Gauss-Legendre rule on [0,1]; log(I+E) = int_0^1 E (I + s E)^{-1} ds.
constexpr int kGaussN = 8;
constexpr double kGaussXi[kGaussN] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
constexpr double kGaussW[kGaussN] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

MatrixXcd log_near_identity(const MatrixXcd& e) {
  const auto n = e.rows();
  MatrixXcd acc = MatrixXcd::Zero(n, n);
  for (int i = 0; i < kGaussN; ++i) {
    const double s = 0.5 * (1.0 + kGaussXi[i]);
    const double w = 0.5 * kGaussW[i];
    MatrixXcd lhs = MatrixXcd::Identity(n, n) + s * e;
    acc += w * lhs.partialPivLu().solve(e);
  }
  return acc;
}

}  // namespace

MatrixXcd mat_exp(const MatrixXcd& a) {
  require_square(a, "mat_exp");
  return a.exp();
}

MatrixXcd mat_log_principal(const MatrixXcd& p) {
  require_square(p, "mat_log_principal");
  const auto n = p.rows();

  Eigen::ComplexEigenSolver<MatrixXcd> es(p, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("mat_log_principal: eigenvalue iteration failed");
  const double scale = p.cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i) {
    const cplx lam = es.eigenvalues()[i];
    const bool on_cut = lam.real() <= 0.0 &&
                        std::abs(lam.imag()) <= 1e-14 * (1.0 + scale);
    if (on_cut)
      throw std::domain_error("step size too large for splitting construction");
  }

  MatrixXcd a = p;
  int k = 0;
  while ((a - MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > 0.35) {
    if (++k > 50) throw std::runtime_error("mat_log_principal: square-root chain too long");
    a = MatrixXcd(a.sqrt());
  }
  return std::ldexp(1.0, k) * log_near_identity(a - MatrixXcd::Identity(n, n));
}

}  // namespace qsplit
