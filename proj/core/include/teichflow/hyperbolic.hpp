#pragma once

#include <string>
#include <vector>

#include "teichflow/field.hpp"
#include "teichflow/target.hpp"

namespace teichflow {

/// Largest admissible collar length, 2 arsinh 1.
double max_collar_length();

/// X(l) = (2 pi / l)(pi/2 - arctan(sinh(l/2))), for 0 < l <= 2 arsinh 1.
double collar_halflength(double ell);

/// rho(s) = l / (2 pi cos(l s / 2 pi)) for |s| <= X(l).
double collar_factor(double ell, double s);

/// rho(X(l)) = l / (2 pi tanh(l/2)).
double collar_boundary_factor(double ell);

/// Half-length of the delta-thin part of the collar; zero for delta <= l/2.
double thin_halflength(double ell, double delta);

/// Inverse of collar_halflength by bisection; DomainError for X < X(2 arsinh 1).
double collar_length_for_halflength(double x);

/// The collar around a closed geodesic of length ell, as a flat cylinder
/// C(-X, X) with conformal factor rho.
class Collar {
 public:
  explicit Collar(double ell);
  double ell() const noexcept { return ell_; }
  double halflength() const noexcept { return x_; }
  double factor(double s) const { return collar_factor(ell_, s); }
  ConformalMetric metric() const { return ConformalMetric::collar(ell_); }
  /// Finite grid on C(-X, X).
  CylinderGrid grid(int n_s, int n_theta) const;

 private:
  double ell_;
  double x_;
};

/// u(s, theta) = alpha(L s / 2X) on C(-X, X).
MapField curve_collapse_map(double x, const UnitSpeedCurve& alpha, int n_s, int n_theta);
MapField curve_collapse_map(const Collar& c, const UnitSpeedCurve& alpha, int n_s, int n_theta);

struct ScalingRow {
  double x;
  double ell;
  double energy;
  double tension_norm2;
  double hopf_l2_2;
};

struct ScalingReport {
  std::string curve;
  double curve_length;
  std::vector<ScalingRow> rows;
  /// Least-squares log-log slopes against X; NaN when a column has zeros.
  double slope_energy;
  double slope_tension;
  double slope_hopf;
};

/// Builds the collapse map on the collar C(l(X)) for every X and measures
/// energy, ||tau_g||^2_{L2(g)} and ||Phi||^2_{L2(g)} by quadrature.
/// rows_per_unit sets the s-resolution.
ScalingReport verify_collapse_scalings(const UnitSpeedCurve& alpha, const std::vector<double>& xs,
                                       int rows_per_unit = 8, int n_theta = 8);

/// Columns X, ell, E, tension_norm2, hopf_L2_2 and a slopes footer.
std::string format_scaling_report(const ScalingReport& r);

/// Least-squares slope of log y against log x; NaN if any value is <= 0.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace teichflow
