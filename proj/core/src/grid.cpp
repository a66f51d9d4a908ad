#include "teichflow/grid.hpp"

#include <algorithm>

#include "teichflow/errors.hpp"

namespace teichflow {

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::finite:
      return "finite";
    case BoundaryKind::periodic:
      return "periodic";
    case BoundaryKind::twisted_periodic:
      return "twisted_periodic";
  }
  return "?";
}

BoundaryKind parse_boundary_kind(const std::string& s) {
  if (s == "finite") return BoundaryKind::finite;
  if (s == "periodic") return BoundaryKind::periodic;
  if (s == "twisted_periodic") return BoundaryKind::twisted_periodic;
  throw DomainError("unknown boundary kind '" + s + "'");
}

std::string to_string(ThetaScheme k) {
  return k == ThetaScheme::spectral ? "spectral" : "finite_difference";
}

ThetaScheme parse_theta_scheme(const std::string& s) {
  if (s == "finite_difference") return ThetaScheme::finite_difference;
  if (s == "spectral") return ThetaScheme::spectral;
  throw DomainError("unknown theta scheme '" + s + "'");
}

CylinderGrid::CylinderGrid(double s_min, double s_max, int n_s, int n_theta,
                           BoundaryKind boundary, double twist, ThetaScheme theta_scheme)
    : s_min_(s_min),
      s_max_(s_max),
      n_s_(n_s),
      n_theta_(n_theta),
      boundary_(boundary),
      twist_(twist),
      theta_scheme_(theta_scheme) {
  if (!(s_min < s_max)) throw DomainError("grid needs s_min < s_max");
  if (n_s < 8 || n_theta < 8) throw DomainError("grid needs at least 8 points per direction");
  if (!std::isfinite(twist)) throw DomainError("twist must be finite");
  if (boundary != BoundaryKind::twisted_periodic && twist != 0.0) {
    throw DomainError("only twisted_periodic grids carry a twist");
  }
}

CylinderGrid CylinderGrid::finite(double s_min, double s_max, int n_s, int n_theta) {
  return {s_min, s_max, n_s, n_theta, BoundaryKind::finite};
}

CylinderGrid CylinderGrid::torus(double a, double b, int n_s, int n_theta) {
  if (!(b > 0.0)) throw DomainError("torus modulus b must be positive");
  return {0.0, b, n_s, n_theta,
          a == 0.0 ? BoundaryKind::periodic : BoundaryKind::twisted_periodic, a};
}

double CylinderGrid::h_s() const noexcept {
  return is_periodic() ? length() / n_s_ : length() / (n_s_ - 1);
}

double CylinderGrid::shear() const noexcept {
  return boundary_ == BoundaryKind::twisted_periodic ? twist_ / length() : 0.0;
}

double CylinderGrid::cell_weight(int i, Interval region) const noexcept {
  const double h = h_s();
  double lo = s(i) - 0.5 * h;
  double hi = s(i) + 0.5 * h;
  const auto overlap = [&](double a, double b) {
    a = std::max(a, region.lo);
    b = std::min(b, region.hi);
    return b > a ? b - a : 0.0;
  };
  if (!is_periodic()) return overlap(std::max(lo, s_min_), std::min(hi, s_max_));
  // Periodic cells also count through their images one period away.
  const double p = length();
  return overlap(lo, hi) + overlap(lo - p, hi - p) + overlap(lo + p, hi + p);
}

double CylinderGrid::cell_weight(int i) const noexcept {
  if (is_periodic()) return h_s();
  return (i == 0 || i == n_s_ - 1) ? 0.5 * h_s() : h_s();
}

CylinderGrid CylinderGrid::with_moduli(double a, double b) const {
  if (!is_periodic()) throw DomainError("with_moduli needs a periodic grid");
  CylinderGrid g = torus(a, b, n_s_, n_theta_);
  g.theta_scheme_ = theta_scheme_;
  return g;
}

CylinderGrid CylinderGrid::with_theta_scheme(ThetaScheme scheme) const {
  CylinderGrid g = *this;
  g.theta_scheme_ = scheme;
  return g;
}

ConformalMetric ConformalMetric::collar(double ell) {
  if (!(ell > 0.0)) throw DomainError("collar length must be positive");
  return {Kind::collar, ell};
}

ConformalMetric ConformalMetric::constant(double rho) {
  if (!(rho > 0.0)) throw DomainError("conformal factor must be positive");
  return {Kind::constant, rho};
}

double ConformalMetric::factor(double s) const {
  switch (kind_) {
    case Kind::flat:
      return 1.0;
    case Kind::constant:
      return param_;
    case Kind::collar: {
      const double c = std::cos(param_ * s / (2.0 * std::numbers::pi));
      if (!(c > 0.0)) throw DomainError("s outside the collar");
      return param_ / (2.0 * std::numbers::pi * c);
    }
  }
  return 1.0;
}

}  // namespace teichflow
