#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qsplit {

/// Scaling-and-squaring Pade matrix exponential.
Eigen::MatrixXcd mat_exp(const Eigen::MatrixXcd& a);

/// Principal matrix logarithm via inverse scaling-and-squaring: repeated
/// square roots until the iterate is near the identity, then a Pade
/// (Gauss-Legendre) evaluation of log(I + E).
///
/// Throws std::domain_error("step size too large for splitting construction")
/// when an eigenvalue lies on the closed negative real axis.
Eigen::MatrixXcd mat_log_principal(const Eigen::MatrixXcd& p);

}  // namespace qsplit
