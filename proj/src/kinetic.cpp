#include "qsplit/kinetic.hpp"

#include <cmath>
#include <stdexcept>

namespace qsplit {

using Eigen::Matrix2d;

Matrix2d kfp_a_matrix(double t) {
  const double th = std::tanh(t), sh = std::sinh(t);
  Matrix2d a;
  a(0, 0) = 0.25 * (t - th * (1.0 - sh * sh));
  a(0, 1) = a(1, 0) = 0.5 * sh * sh;
  a(1, 1) = 0.5 * std::sinh(2.0 * t);
  return a;
}

SplittingPlan kfp_plan(double t) {
  if (!(t > 0)) throw std::invalid_argument("kfp_plan: t must be positive");
  Matrix2d decay = Matrix2d::Zero();
  decay(1, 1) = 0.5 * std::tanh(t);

  SplittingPlan plan;
  plan.dims = 2;
  plan.provenance = "KFP exact factorization";
  plan.exactness = Exactness::exact_in_time;
  plan.factors = {
      ElementaryFactor::gaussian_decay(decay),
      ElementaryFactor::shear(0, 1, -std::tanh(t)),
      ElementaryFactor::fourier_gaussian(kfp_a_matrix(t)),
      ElementaryFactor::gaussian_decay(decay),
  };
  return plan;
}

Matrix2d fp_a_matrix(double t) {
  const double s2 = std::sinh(0.5 * t) * std::sinh(0.5 * t);
  Matrix2d a;
  a(0, 0) = 0.5 * (std::exp(2.0 * t) + 2.0 * t + 3.0 - 4.0 * std::exp(t));
  a(0, 1) = a(1, 0) = -2.0 * s2;
  a(1, 1) = 0.5 * (1.0 - std::exp(-2.0 * t));
  return a;
}

double fp_alpha(double t) {
  return 0.5 * std::sqrt((1.0 - std::exp(-t)) * std::exp(-t));
}

double fp_beta(double t) { return 0.5 * std::sqrt(std::exp(t) - 1.0); }

SplittingPlan fp_plan(double t) {
  if (!(t > 0)) throw std::invalid_argument("fp_plan: t must be positive");
  const double at = fp_alpha(t), bt = fp_beta(t);
  Eigen::Matrix2d evv = Matrix2d::Zero();
  evv(1, 1) = 1.0;

  SplittingPlan plan;
  plan.dims = 2;
  plan.provenance = "FP exact factorization";
  plan.exactness = Exactness::exact_in_time;
  plan.factors = {
      ElementaryFactor::quadratic_phase(at * evv),
      ElementaryFactor::fourier_quadratic(-bt * evv),
      ElementaryFactor::quadratic_phase(-bt * evv),
      ElementaryFactor::fourier_quadratic(at * evv),
      ElementaryFactor::fourier_gaussian(fp_a_matrix(t)),
      ElementaryFactor::shear(0, 1, -(std::exp(t) - 1.0)),
      ElementaryFactor::scalar(cplx(0.5 * t, 0)),
  };
  return plan;
}

}  // namespace qsplit
