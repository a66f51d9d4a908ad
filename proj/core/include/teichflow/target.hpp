#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace teichflow {

using AmbientVector = std::vector<double>;

enum class TargetKind { circle, sphere, euclidean };

/// Tolerance used when checking that a point lies on N or a vector is
/// tangent to N at a point.
inline constexpr double kTangencyTolerance = 1e-8;

/// An isometrically embedded target N in R^{N0}: the unit circle, a unit
/// sphere S^n, or a flat ambient region.
class TargetManifold {
 public:
  static TargetManifold circle();
  /// S^n embedded in R^{n+1}.
  static TargetManifold sphere(int n);
  static TargetManifold euclidean(int dim);

  /// Inverse of name(): "circle", "sphere2", "euclidean3", ...
  static TargetManifold parse(const std::string& name);

  TargetKind kind() const noexcept { return kind_; }
  int ambient_dim() const noexcept { return dim_; }
  bool is_round() const noexcept { return kind_ != TargetKind::euclidean; }
  std::string name() const;

  /// Nearest-point retraction onto N, in place. Throws DomainError for the
  /// zero vector on round targets.
  void project_in_place(std::span<double> p) const;

  /// Removes the normal component of v at u, in place.
  void tangent_project_in_place(std::span<const double> u, std::span<double> v) const;

  /// Ambient distance from p to N.
  double distance_to(std::span<const double> p) const;

  bool operator==(const TargetManifold&) const = default;

 private:
  TargetManifold(TargetKind kind, int dim) : kind_(kind), dim_(dim) {}

  TargetKind kind_;
  int dim_;
};

AmbientVector project(const TargetManifold& m, std::span<const double> p);

/// A(u)(X, Y), with the sign fixed so that the tension
/// u_ss + u_tt + A(u)(u_s,u_s) + A(u)(u_t,u_t) vanishes on geodesics.
/// On round targets this is <X,Y> u, on flat targets 0.
/// Throws ContractViolation when u is off N or X, Y are not tangent.
AmbientVector second_fundamental_form(const TargetManifold& m, std::span<const double> u,
                                      std::span<const double> x, std::span<const double> y);

AmbientVector tangent_project(const TargetManifold& m, std::span<const double> u,
                              std::span<const double> v);

/// A C^2 unit-speed curve alpha: [-L/2, L/2] -> N.
class UnitSpeedCurve {
 public:
  using Rule = std::function<void(double, std::span<double>)>;

  UnitSpeedCurve(TargetManifold target, double length, Rule rule, std::string tag);

  /// Straight segment t -> t e_1 in flat R^dim.
  static UnitSpeedCurve segment(double length, int dim = 2);
  /// t -> (cos t, sin t) on S^1.
  static UnitSpeedCurve circle_arc(double length);
  /// t -> (cos t, sin t, 0) on S^2 (a geodesic).
  static UnitSpeedCurve great_circle_arc(double length);
  /// Planar circle of the given radius in flat R^2, through the origin at
  /// t = 0. Curvature 1/radius, so its collapse maps carry nonzero tension.
  static UnitSpeedCurve planar_arc(double length, double radius = 1.0);

  const TargetManifold& target() const noexcept { return target_; }
  double length() const noexcept { return length_; }
  const std::string& tag() const noexcept { return tag_; }
  static constexpr const char* smoothness() { return "C2"; }

  /// Evaluates without range checks; used by the collapse-map sampler.
  void eval(double t, std::span<double> out) const { rule_(t, out); }

 private:
  TargetManifold target_;
  double length_;
  Rule rule_;
  std::string tag_;
};

/// alpha(t) for t in [-L/2, L/2]; DomainError outside.
AmbientVector curve_eval(const UnitSpeedCurve& c, double t);

}  // namespace teichflow
