#pragma once

#include "qsplit/factors.hpp"

#include <vector>

namespace qsplit {

/// Triangular factorization of the quadratic Schroedinger flow
/// e^{it(Lap/2 - V(x)) - t B x . grad}:
///
///   e^{-it v_l(x)} [prod_{j<n} e^{-t (U x)_j d_j}] e^{it a(grad)}
///   [prod_{j>1} e^{-t (L x)_j d_j}] e^{-it v_r(x)}
///
/// with U strictly upper, L strictly lower triangular and v_l diagonal.
struct TriangularSplitting {
  int n = 0;
  double t = 0;
  Eigen::MatrixXd A;       // symmetric frequency form
  Eigen::MatrixXd L, U;    // strictly lower / upper
  Eigen::VectorXd v_left;  // diagonal phase form
  Eigen::MatrixXd v_right; // symmetric phase form
  int iterations = 0;
  std::vector<double> residual_history;  // successive max-norm changes
  double identity_residual = 0;          // flow product vs e^{-2itJQ}

  SplittingPlan to_plan() const;
};

/// Fixed-point construction of the coefficients for the standard-form model
/// (unit kinetic part): B skew-symmetric, Vm symmetric. Seeded at
/// (A, L+U, V) = (I/2, B, Vm); each sweep reads the blocks of
/// -t^{-1} J log(P) and feeds the defect back. Throws std::domain_error
/// ("dt beyond splitting radius; reduce step") when the principal log does
/// not exist or the sweep fails to contract.
TriangularSplitting triangular_split(const Eigen::MatrixXd& b,
                                     const Eigen::MatrixXd& vm, double t);

/// Same, extracting (B, Vm) from a standard-form quadratic symbol
/// p = i|xi|^2/2 + i B x.xi + i V(x).
TriangularSplitting triangular_split(const QuadraticSymbol& p, double t);

}  // namespace qsplit
