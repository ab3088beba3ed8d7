#pragma once

#include "qsplit/symbol.hpp"

#include <string>
#include <vector>

namespace qsplit {

/// The eight elementary operator kinds a splitting may contain:
///   e^{a d/dx_j}, e^{i a x_j}, e^{i a(grad)}, e^{i a(x)},
///   e^{a x_k d/dx_j} (k != j), e^{-b(x)} (b >= 0), e^{b(grad)} (b >= 0), e^{g}.
enum class FactorKind {
  translation,
  linear_phase,
  fourier_quadratic,
  quadratic_phase,
  shear,
  gaussian_decay,
  fourier_gaussian,
  scalar,
};

struct ElementaryFactor {
  FactorKind kind{};
  int axis_j = -1;      // translation / linear phase axis; shear target axis
  int axis_k = -1;      // shear source axis
  double alpha = 0.0;   // coefficient of the three scalar-coefficient kinds
  cplx gamma{0, 0};     // scalar exponent
  Eigen::MatrixXd form; // n x n real quadratic-form matrix (quadratic kinds)

  static ElementaryFactor translation(int j, double a);
  static ElementaryFactor linear_phase(int j, double a);
  static ElementaryFactor fourier_quadratic(const Eigen::MatrixXd& a);
  static ElementaryFactor quadratic_phase(const Eigen::MatrixXd& a);
  static ElementaryFactor shear(int j, int k, double a);
  static ElementaryFactor gaussian_decay(const Eigen::MatrixXd& b);
  static ElementaryFactor fourier_gaussian(const Eigen::MatrixXd& b);
  static ElementaryFactor scalar(cplx g);
};

enum class Exactness { exact_in_time, order_2 };

/// An ordered product of elementary factors. `factors` is stored in
/// application order: factors.front() acts on the field first (it is the
/// rightmost factor of the operator product).
struct SplittingPlan {
  int dims = 0;
  std::vector<ElementaryFactor> factors;
  std::string provenance;
  Exactness exactness = Exactness::exact_in_time;
};

/// Matrix flow of one factor under the phase-space morphism; products of
/// factor flows taken in operator order reproduce e^{-2 i t J Q} of the
/// generating symbol. Scalar factors map to the identity.
Eigen::MatrixXcd factor_flow(const ElementaryFactor& f, int dims);

/// Product of the scalar factors e^{gamma}.
cplx plan_scalar(const SplittingPlan& plan);

struct PlanResidual {
  double matrix = 0.0; // max-norm of flow product minus e^{-2itJQ}
  double scalar = 0.0; // |prod e^gamma - e^{-t c}|
};

/// Multiplies the factor flows and compares against the Hamiltonian flow of
/// the target symbol over duration t.
PlanResidual verify_plan(const SplittingPlan& plan, const QuadraticSymbol& target,
                         double t);

}  // namespace qsplit
