#pragma once

#include "qsplit/factors.hpp"

namespace qsplit {

/// Gaussian weight matrix of the Fourier factor in the KFP factorization.
Eigen::Matrix2d kfp_a_matrix(double t);

/// Exact four-factor plan for e^{-t (v^2 - d_v^2 + v d_x)} on (x, v):
/// Gaussian decay in v, Fourier Gaussian, shear e^{-tanh(t) v d_x}, Gaussian
/// decay again. Requires t > 0.
SplittingPlan kfp_plan(double t);

Eigen::Matrix2d fp_a_matrix(double t);
double fp_alpha(double t);
double fp_beta(double t);

/// Exact seven-factor plan for e^{-t (v d_x - d_v^2 - d_v v)}: scalar e^{t/2},
/// shear with coefficient -(e^t - 1), Fourier Gaussian, and the
/// quadratic-multiplier/ quadratic-phase quadruple. Requires t > 0.
SplittingPlan fp_plan(double t);

}  // namespace qsplit
