#pragma once

#include "qsplit/fft.hpp"
#include "qsplit/grid.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qsplit {

/// Per-step observable table; every column shares the times axis.
struct DiagnosticSeries {
  std::vector<double> times;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // data[c][row]

  void set_columns(std::vector<std::string> names);
  void add_row(double t, const std::vector<double>& values);
  const std::vector<double>& column(const std::string& name) const;

  /// CSV with a header row and full f64 round-trip precision.
  std::string to_csv() const;
};

/// Scaled root-sum-square distance to a reference function sampled on the
/// physical nodes: sqrt(prod h_j * sum |f_g - exact(g)|^2).
double l2_error(const Field& numeric,
                const std::function<cplx(const Eigen::VectorXd&)>& exact);

/// prod h_j * sum |psi|^2.
double mass(const Field& psi);

/// Spectral partial derivative along one axis (field returned physical).
Field partial_derivative(const Field& f, int axis, PartialFourier& fft);

/// Energy functional: integral of
///   kinetic/2 |grad psi|^2 + V |psi|^2 + F(x, |psi|^2)
///   - Re(i (W x . grad psi) conj(psi)),
/// with F the density antiderivative of the non-quadratic term (so the value
/// is the conserved quantity of the flow).
struct EnergyModel {
  double kinetic = 1.0;
  Eigen::MatrixXd W;  // rotation-term matrix; empty for none
  std::function<double(const Eigen::VectorXd&)> potential;          // V(x)
  std::function<double(const Eigen::VectorXd&, double)> nonlinear;  // F(x, rho)
};
double energy(const Field& psi, const EnergyModel& model, PartialFourier& fft);

/// Expectation of the third angular-momentum component on a 2D field.
struct AngularMomentum {
  double value = 0;           // real part
  double imag_residual = 0;   // must stay at quadrature round-off
};
AngularMomentum angular_momentum(const Field& psi, PartialFourier& fft);

/// Weighted L^2 distance to the Maxwellian mu(v) = e^{-v^2/2}/sqrt(2 pi):
/// integral of (f - mu)^2 / mu over the box; axis 1 is the velocity.
double entropy(const Field& f);

struct CondensateMoments {
  double s_x1 = 0, s_x2 = 0;   // widths sqrt(int alpha^2 |psi|^2)
  Eigen::Vector2d center{0, 0};
};
CondensateMoments condensate_widths_and_center(const Field& psi);

/// Least-squares slope of ln(column) against time over [t0, t1].
double decay_rate(const DiagnosticSeries& series, const std::string& column,
                  double t0, double t1);

}  // namespace qsplit
