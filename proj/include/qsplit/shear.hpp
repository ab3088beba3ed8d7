#pragma once

#include "qsplit/factors.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qsplit {

/// Factorization of e^{t M x . grad} into n+1 one-axis shear flows
///
///   e^{t (y_l . x) d_i} [ prod_{k != i, ascending} e^{t (y_k . x) d_k} ]
///   e^{t (y_r . x) d_i},
///
/// with y_l[i] = y_r[i] = 0 and y_k[k] = 0. At the matrix level the
/// coordinate maps A(y) = I + t e_axis y^T compose in reverse operator order:
/// A(y_r) * prod_{k desc} A(y_k) * A(y_l) = e^{tM}.
struct ShearFactorization {
  int n = 0;
  int pivot = 0;
  double t = 0;
  Eigen::VectorXd y_left, y_right;
  std::vector<std::pair<int, Eigen::VectorXd>> y_mid;  // (axis k, vector), ascending k
  double residual = 0;  // max-norm of reconstruct() - e^{tM}

  Eigen::MatrixXd reconstruct() const;
  SplittingPlan to_plan() const;
};

/// Solves the factorization by Newton iteration on the n^2 - 1 free
/// coefficients (finite-difference Jacobian), with continuation in t on
/// divergence. M must have zero diagonal; the pivot column must be fully
/// nonzero off the diagonal (smallest admissible index unless overridden).
ShearFactorization shear_factorize(const Eigen::MatrixXd& m, double t,
                                   std::optional<int> pivot_override = std::nullopt);

}  // namespace qsplit
