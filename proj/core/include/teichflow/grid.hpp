#pragma once

#include <cmath>
#include <numbers>
#include <string>

namespace teichflow {

enum class BoundaryKind { finite, periodic, twisted_periodic };
enum class ThetaScheme { finite_difference, spectral };

std::string to_string(BoundaryKind k);
BoundaryKind parse_boundary_kind(const std::string& s);
std::string to_string(ThetaScheme k);
ThetaScheme parse_theta_scheme(const std::string& s);

/// A closed s-interval [lo, hi] used to restrict integrals.
struct Interval {
  double lo;
  double hi;
  double length() const { return hi > lo ? hi - lo : 0.0; }
};

/// Uniform (s, theta) grid on a cylinder C(s_min, s_max) x S^1, theta-period 2 pi.
///
/// finite: nodes s_min ... s_max inclusive, two boundary circles.
/// periodic: n_s nodes per period s_max - s_min (a torus with zero twist).
/// twisted_periodic: the torus C(0, b) / (s, theta) ~ (s + b, theta + a), with
///   b = s_max - s_min and a = twist. It is stored on the lattice-aligned
///   grid: node (i, j) sits at theta_j + a (s_i - s_min) / b, so rows are
///   sheared and the seam is plain index periodicity.
class CylinderGrid {
 public:
  CylinderGrid(double s_min, double s_max, int n_s, int n_theta,
               BoundaryKind boundary = BoundaryKind::finite, double twist = 0.0,
               ThetaScheme theta_scheme = ThetaScheme::finite_difference);

  static CylinderGrid finite(double s_min, double s_max, int n_s, int n_theta);
  /// Torus grid for lattice (2 pi, a + i b) on C(0, b).
  static CylinderGrid torus(double a, double b, int n_s, int n_theta);

  double s_min() const noexcept { return s_min_; }
  double s_max() const noexcept { return s_max_; }
  int n_s() const noexcept { return n_s_; }
  int n_theta() const noexcept { return n_theta_; }
  BoundaryKind boundary() const noexcept { return boundary_; }
  double twist() const noexcept { return twist_; }
  ThetaScheme theta_scheme() const noexcept { return theta_scheme_; }
  bool is_periodic() const noexcept { return boundary_ != BoundaryKind::finite; }

  double length() const noexcept { return s_max_ - s_min_; }
  double h_s() const noexcept;
  double h_theta() const noexcept { return 2.0 * std::numbers::pi / n_theta_; }
  double s(int i) const noexcept { return s_min_ + i * h_s(); }
  /// Angular position of node (i, j), including the lattice shear.
  double theta(int i, int j) const noexcept { return j * h_theta() + shear() * (s(i) - s_min_); }
  /// d(theta offset)/ds of the stored rows: twist / period, zero otherwise.
  double shear() const noexcept;

  /// Length of the s-cell of row i that lies inside [lo, hi]. Cells are
  /// [s_i - h/2, s_i + h/2], clipped to [s_min, s_max] on finite grids and
  /// wrapped by one period on periodic ones.
  double cell_weight(int i, Interval region) const noexcept;
  double cell_weight(int i) const noexcept;

  /// True for rows where the discrete tension is evaluated.
  bool is_interior_row(int i) const noexcept {
    return is_periodic() || (i > 0 && i < n_s_ - 1);
  }

  /// Same node counts and scheme, new lattice; only valid on periodic grids.
  CylinderGrid with_moduli(double a, double b) const;
  CylinderGrid with_theta_scheme(ThetaScheme scheme) const;

  bool operator==(const CylinderGrid&) const = default;

 private:
  double s_min_;
  double s_max_;
  int n_s_;
  int n_theta_;
  BoundaryKind boundary_;
  double twist_;
  ThetaScheme theta_scheme_;
};

/// Conformal factor rho(s) of g = rho^2 (ds^2 + dtheta^2).
class ConformalMetric {
 public:
  enum class Kind { flat, collar, constant };

  static ConformalMetric flat() { return {Kind::flat, 1.0}; }
  /// Hyperbolic collar around a geodesic of length ell.
  static ConformalMetric collar(double ell);
  static ConformalMetric constant(double rho);

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  double factor(double s) const;

 private:
  ConformalMetric(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

}  // namespace teichflow
