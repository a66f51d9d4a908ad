#include "teichflow/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "teichflow/errors.hpp"

namespace teichflow {

namespace {

constexpr double kPi = std::numbers::pi;

void check_length(double ell) {
  if (!(ell > 0.0) || ell > max_collar_length() * (1.0 + 1e-15)) {
    throw DomainError("collar length must lie in (0, 2 arsinh 1]");
  }
}

}  // namespace

double max_collar_length() { return 2.0 * std::asinh(1.0); }

double collar_halflength(double ell) {
  check_length(ell);
  return (2.0 * kPi / ell) * (0.5 * kPi - std::atan(std::sinh(0.5 * ell)));
}

double collar_factor(double ell, double s) {
  const double x = collar_halflength(ell);
  if (std::abs(s) > x * (1.0 + 1e-12)) throw DomainError("s outside the collar");
  return ell / (2.0 * kPi * std::cos(ell * s / (2.0 * kPi)));
}

double collar_boundary_factor(double ell) {
  check_length(ell);
  return ell / (2.0 * kPi * std::tanh(0.5 * ell));
}

double thin_halflength(double ell, double delta) {
  check_length(ell);
  if (!(delta > 0.0) || !(delta < std::asinh(1.0))) throw DomainError("delta must lie in (0, arsinh 1)");
  if (delta <= 0.5 * ell) return 0.0;
  const double r = std::min(1.0, std::sinh(0.5 * ell) / std::sinh(delta));
  return (2.0 * kPi / ell) * (0.5 * kPi - std::asin(r));
}

double collar_length_for_halflength(double x) {
  const double hi0 = max_collar_length();
  const double xmin = collar_halflength(hi0);
  if (!(x >= xmin * (1.0 - 1e-15)) || !std::isfinite(x)) {
    throw DomainError("half-length is not attained by any collar");
  }
  if (x <= xmin) return hi0;
  // X(l) < pi^2 / l, so l = pi^2 / x undershoots X and l/2 pairs with it.
  double lo = std::min(hi0, kPi * kPi / x);
  while (collar_halflength(lo) < x) lo *= 0.5;
  double hi = hi0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (collar_halflength(mid) > x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Collar::Collar(double ell) : ell_(ell), x_(collar_halflength(ell)) {}

CylinderGrid Collar::grid(int n_s, int n_theta) const { return CylinderGrid::finite(-x_, x_, n_s, n_theta); }

MapField curve_collapse_map(double x, const UnitSpeedCurve& alpha, int n_s, int n_theta) {
  if (!(x > 0.0)) throw DomainError("half-length must be positive");
  const double half = 0.5 * alpha.length();
  const auto grid = CylinderGrid::finite(-x, x, n_s, n_theta);
  return MapField::sample(grid, alpha.target(), [&](double s, double, std::span<double> out) {
    const double t = std::clamp(alpha.length() * s / (2.0 * x), -half, half);
    alpha.eval(t, out);
  });
}

MapField curve_collapse_map(const Collar& c, const UnitSpeedCurve& alpha, int n_s, int n_theta) {
  return curve_collapse_map(c.halflength(), alpha, n_s, n_theta);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope needs two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingReport verify_collapse_scalings(const UnitSpeedCurve& alpha, const std::vector<double>& xs, int rows_per_unit,
                                       int n_theta) {
  if (xs.size() < 2) throw DomainError("need at least two half-lengths");
  for (std::size_t k = 1; k < xs.size(); ++k) {
    if (!(xs[k] > xs[k - 1])) throw DomainError("half-lengths must be increasing");
  }
  ScalingReport r{alpha.tag(), alpha.length(), {}, 0, 0, 0};
  std::vector<double> e, t, h;
  for (double x : xs) {
    const double ell = collar_length_for_halflength(x);
    const Collar collar(ell);
    const int n_s = std::max(65, static_cast<int>(std::ceil(2.0 * collar.halflength() * rows_per_unit)) + 1);
    const auto u = curve_collapse_map(collar, alpha, n_s, n_theta);
    const auto metric = collar.metric();
    const double tn = tension_norm(u, metric);
    const double hn = hopf_norms(hopf(u), metric).l2;
    r.rows.push_back({collar.halflength(), ell, energy(u), tn * tn, hn * hn});
    e.push_back(r.rows.back().energy);
    t.push_back(r.rows.back().tension_norm2);
    h.push_back(r.rows.back().hopf_l2_2);
  }
  r.slope_energy = loglog_slope(xs, e);
  r.slope_tension = loglog_slope(xs, t);
  r.slope_hopf = loglog_slope(xs, h);
  return r;
}

std::string format_scaling_report(const ScalingReport& r) {
  std::ostringstream os;
  char buf[256];
  os << "# curve " << r.curve << " length " << r.curve_length << '\n';
  std::snprintf(buf, sizeof buf, "%14s %22s %22s %22s %22s\n", "X", "ell", "E", "tension_norm2", "hopf_L2_2");
  os << buf;
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%14.6f %22.15e %22.15e %22.15e %22.15e\n", row.x, row.ell, row.energy,
                  row.tension_norm2, row.hopf_l2_2);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "# slopes E %.6f tension_norm2 %.6f hopf_L2_2 %.6f\n", r.slope_energy,
                r.slope_tension, r.slope_hopf);
  os << buf;
  return os.str();
}

}  // namespace teichflow
