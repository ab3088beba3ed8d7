#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qsplit {

using cplx = std::complex<double>;

/// Degree-2 symbol p(X) = X^T Q X + Y^T X + c with X = (x_1..x_n, xi_1..xi_n).
/// Q is stored symmetrized.
struct QuadraticSymbol {
  int n = 0;
  Eigen::MatrixXcd Q;  // 2n x 2n, Q = Q^T
  Eigen::VectorXcd Y;  // 2n
  cplx c{0, 0};

  static QuadraticSymbol homogeneous(int n, const Eigen::MatrixXcd& q, cplx c = {0, 0});
};

/// The 2n x 2n block matrix [[0, I], [-I, 0]].
Eigen::MatrixXd standard_symplectic(int n);

/// Matrix flow e^{-2 i t J Q} of the Hamiltonian ODE attached to the symbol.
struct HamiltonianFlow {
  Eigen::MatrixXcd matrix;
  double t = 0;
};
HamiltonianFlow hamiltonian_flow(const QuadraticSymbol& p, double t);

/// For a real positive-definite Hamiltonian form (stored either as a real Q or
/// as i times a real Q for unitary evolutions), the eigenvalues of J Q are
/// {+-i w_j}; returns the w_j sorted ascending.
///
/// Throws std::domain_error("not a positive quadratic Hamiltonian") when the
/// real form is not positive definite.
Eigen::VectorXd frequencies(const QuadraticSymbol& p);

/// Real symmetric form of a symbol: Q itself when real, Im(Q) when Q is i
/// times a real matrix. Used by frequencies and the spectrum checks.
Eigen::MatrixXd real_hamiltonian_form(const QuadraticSymbol& p);

/// Characteristic polynomial coefficients of a real square matrix by the
/// Faddeev-LeVerrier recurrence; coeffs[k] multiplies lambda^k, leading 1.
Eigen::VectorXd char_poly(const Eigen::MatrixXd& a);

// --- model symbols -------------------------------------------------------

/// Transport d_t f = (M x) . grad f; symbol p = -i (M x) . xi.
QuadraticSymbol transport_symbol(const Eigen::MatrixXd& m);

/// Kramer-Fokker-Planck: p = v^2 + eta^2 + i v xi on (x, v, xi, eta).
QuadraticSymbol kfp_symbol();

/// Fokker-Planck: p = i v xi + eta^2 - i v eta - 1/2.
QuadraticSymbol fp_symbol();

/// Quadratic Schroedinger i d_t psi = -1/2 Lap psi - i (B x).grad psi + V psi;
/// symbol p = i |xi|^2 / 2 + i B x . xi + i x^T Vm x. B must be skew-symmetric
/// and Vm symmetric.
QuadraticSymbol qm_symbol(const Eigen::MatrixXd& b, const Eigen::MatrixXd& vm);

}  // namespace qsplit
