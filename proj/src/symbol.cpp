#include "qsplit/symbol.hpp"

#include "qsplit/matfun.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsplit {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

QuadraticSymbol QuadraticSymbol::homogeneous(int n, const MatrixXcd& q, cplx c) {
  if (q.rows() != 2 * n || q.cols() != 2 * n)
    throw std::invalid_argument("QuadraticSymbol: Q must be 2n x 2n");
  QuadraticSymbol p;
  p.n = n;
  p.Q = 0.5 * (q + q.transpose());
  p.Y = Eigen::VectorXcd::Zero(2 * n);
  p.c = c;
  return p;
}

MatrixXd standard_symplectic(int n) {
  if (n < 1) throw std::invalid_argument("standard_symplectic: n < 1");
  MatrixXd j = MatrixXd::Zero(2 * n, 2 * n);
  j.block(0, n, n, n) = MatrixXd::Identity(n, n);
  j.block(n, 0, n, n) = -MatrixXd::Identity(n, n);
  return j;
}

HamiltonianFlow hamiltonian_flow(const QuadraticSymbol& p, double t) {
  const cplx i2t(0, -2.0 * t);
  MatrixXcd jq = standard_symplectic(p.n).cast<cplx>() * p.Q;
  return HamiltonianFlow{mat_exp(i2t * jq), t};
}

MatrixXd real_hamiltonian_form(const QuadraticSymbol& p) {
  const double scale = p.Q.cwiseAbs().maxCoeff();
  const double re = p.Q.real().cwiseAbs().maxCoeff();
  const double im = p.Q.imag().cwiseAbs().maxCoeff();
  if (im <= 1e-14 * scale) return p.Q.real();
  if (re <= 1e-14 * scale) return p.Q.imag();
  throw std::domain_error("not a positive quadratic Hamiltonian");
}

VectorXd frequencies(const QuadraticSymbol& p) {
  const MatrixXd q = real_hamiltonian_form(p);
  Eigen::SelfAdjointEigenSolver<MatrixXd> sa(0.5 * (q + q.transpose()));
  const double qnorm = q.cwiseAbs().maxCoeff();
  if (sa.eigenvalues().minCoeff() <= 1e-12 * qnorm)
    throw std::domain_error("not a positive quadratic Hamiltonian");

  Eigen::EigenSolver<MatrixXd> es(standard_symplectic(p.n) * q, false);
  std::vector<double> ws;
  for (int i = 0; i < 2 * p.n; ++i) {
    const cplx lam = es.eigenvalues()[i];
    if (std::abs(lam.real()) > 1e-9 * (1.0 + std::abs(lam)))
      throw std::domain_error("not a positive quadratic Hamiltonian");
    if (lam.imag() > 0) ws.push_back(lam.imag());
  }
  if (static_cast<int>(ws.size()) != p.n)
    throw std::domain_error("not a positive quadratic Hamiltonian");
  std::sort(ws.begin(), ws.end());
  return Eigen::Map<VectorXd>(ws.data(), p.n);
}

VectorXd char_poly(const MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("char_poly: non-square");
  VectorXd c = VectorXd::Zero(n + 1);
  c[n] = 1.0;
  MatrixXd m = a;
  for (int k = 1; k <= n; ++k) {
    c[n - k] = -m.trace() / k;
    if (k < n) m = a * (m + c[n - k] * MatrixXd::Identity(n, n));
  }
  return c;
}

QuadraticSymbol transport_symbol(const MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw std::invalid_argument("transport_symbol: non-square M");
  MatrixXcd q = MatrixXcd::Zero(2 * n, 2 * n);
  const cplx half_i(0, -0.5);
  q.block(0, n, n, n) = half_i * m.transpose();
  q.block(n, 0, n, n) = half_i * m;
  return QuadraticSymbol::homogeneous(n, q);
}

QuadraticSymbol kfp_symbol() {
  MatrixXcd q = MatrixXcd::Zero(4, 4);
  const cplx i(0, 1);
  q(1, 1) = 1;                 // v^2
  q(3, 3) = 1;                 // eta^2
  q(1, 2) = q(2, 1) = i / 2.0; // i v xi
  return QuadraticSymbol::homogeneous(2, q);
}

QuadraticSymbol fp_symbol() {
  MatrixXcd q = MatrixXcd::Zero(4, 4);
  const cplx i(0, 1);
  q(1, 2) = q(2, 1) = i / 2.0;  // i v xi
  q(3, 3) = 1;                  // eta^2
  q(1, 3) = q(3, 1) = -i / 2.0; // -i v eta
  return QuadraticSymbol::homogeneous(2, q, cplx(-0.5, 0));
}

QuadraticSymbol qm_symbol(const MatrixXd& b, const MatrixXd& vm) {
  const int n = static_cast<int>(b.rows());
  if (b.cols() != n || vm.rows() != n || vm.cols() != n)
    throw std::invalid_argument("qm_symbol: dimension mismatch");
  if ((b + b.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + b.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("qm_symbol: B not skew-symmetric");
  if ((vm - vm.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + vm.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("qm_symbol: V not a quadratic form");
  MatrixXcd qr = MatrixXcd::Zero(2 * n, 2 * n);
  qr.block(0, 0, n, n) = vm.cast<cplx>();
  qr.block(0, n, n, n) = 0.5 * b.transpose().cast<cplx>();
  qr.block(n, 0, n, n) = 0.5 * b.cast<cplx>();
  qr.block(n, n, n, n) = 0.5 * MatrixXcd::Identity(n, n);
  return QuadraticSymbol::homogeneous(n, cplx(0, 1) * qr);
}

}  // namespace qsplit
