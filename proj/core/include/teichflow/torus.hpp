#pragma once

#include <complex>

#include "teichflow/field.hpp"

namespace teichflow {

/// Flat torus C(0, b) / <(s, theta) ~ (s, theta + 2 pi), (s, theta) ~ (s + b, theta + a)>
/// with the unit-area metric g = (1 / 2 pi b) g0.
struct TorusModuli {
  double a = 0.0;
  double b = 2.0 * std::numbers::pi;

  /// ell(g) = (2 pi / b)^{1/2}.
  double ell() const { return std::sqrt(2.0 * std::numbers::pi / b); }
  /// rho^2 of g relative to the flat metric.
  double scale() const { return 1.0 / (2.0 * std::numbers::pi * b); }
  ConformalMetric metric() const { return ConformalMetric::constant(std::sqrt(scale())); }
  bool operator==(const TorusModuli&) const = default;
};

/// Constant holomorphic quadratic differential c dz^2.
struct HolomorphicQD {
  std::complex<double> c;
};

/// Reduces (a, b) into the fundamental domain -pi < a <= pi, |a + ib| >= 2 pi
/// (strict when a < 0) with the generators a -> a +- 2 pi and inversion.
/// DomainError if b <= 0 or no fixpoint within 50 iterations.
TorusModuli normalize_moduli(double a, double b);

/// Moduli read off a periodic grid: a = twist, b = period.
TorusModuli moduli_of(const CylinderGrid& grid);

/// c = (1 / 2 pi b) sum phi h_s h_theta over one period.
HolomorphicQD project_hopf(const QuadDiff& q, const TorusModuli& m);

struct ProjectionNorms {
  double l1;
  double l2;
};
/// Both equal 4 pi b |c| on the unit-area torus.
ProjectionNorms projection_norms(const HolomorphicQD& h, const TorusModuli& m);

struct ModuliVelocity {
  double da;
  double db;
};
/// (a, b) velocity whose metric variation is (eta^2 / 4) Re(c dz^2).
ModuliVelocity moduli_velocity(const QuadDiff& q, const TorusModuli& m, double eta);
ModuliVelocity moduli_velocity(const HolomorphicQD& h, const TorusModuli& m, double eta);

/// |sum Re phi h_s h_theta| over one period.
double mean_hopf_defect(const QuadDiff& q, const TorusModuli& m);

/// Squared L2(g) norm of the constant metric variation taking (a, b) to
/// (a + da, b + db), divided by dt^2, evaluated at (a, b).
double metric_rate_norm2(const TorusModuli& m, double da, double db, double dt);

}  // namespace teichflow
