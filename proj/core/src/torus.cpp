#include "teichflow/torus.hpp"

#include <array>
#include <cmath>

#include "teichflow/errors.hpp"

namespace teichflow {

namespace {

constexpr double kPi = std::numbers::pi;

void check_period(const CylinderGrid& g, const TorusModuli& m) {
  if (!g.is_periodic()) throw DomainError("projection needs a periodic grid");
  if (std::abs(g.length() - m.b) > 1e-12 * m.b || std::abs(g.twist() - m.a) > 1e-12 * (1.0 + std::abs(m.a))) {
    throw DomainError("grid does not cover one period of the torus");
  }
}

// Metric tensor of g in the fixed coordinates (xi, y), s = b xi, theta = y + a xi.
std::array<double, 3> metric_tensor(double a, double b) {
  const double k = 1.0 / (2.0 * kPi * b);
  return {k * (b * b + a * a), k * a, k};
}

}  // namespace

TorusModuli normalize_moduli(double a, double b) {
  if (!(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) throw DomainError("torus needs b > 0");
  const double two_pi = 2.0 * kPi;
  for (int it = 0; it < 50; ++it) {
    a -= two_pi * std::floor((a + kPi) / two_pi);
    if (a <= -kPi) a += two_pi;
    if (a > kPi) a -= two_pi;
    const double r2 = a * a + b * b;
    const double r2min = two_pi * two_pi;
    const bool on_circle = std::abs(r2 - r2min) <= 1e-14 * r2min;
    if (r2 < r2min && !on_circle) {
      // tau -> -1/tau with tau = (a + ib) / 2 pi.
      a = -a * r2min / r2;
      b = b * r2min / r2;
      continue;
    }
    if (on_circle && a < 0.0) {
      a = -a;
      continue;
    }
    return {a, b};
  }
  throw DomainError("modular reduction did not converge");
}

TorusModuli moduli_of(const CylinderGrid& grid) {
  if (!grid.is_periodic()) throw DomainError("moduli need a periodic grid");
  return {grid.twist(), grid.length()};
}

HolomorphicQD project_hopf(const QuadDiff& q, const TorusModuli& m) {
  check_period(q.grid, m);
  const auto& g = q.grid;
  std::complex<double> sum = 0.0;
  for (int i = 0; i < g.n_s(); ++i) {
    std::complex<double> row = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) row += q.at(i, j);
    sum += row;
  }
  return {sum * g.h_s() * g.h_theta() / (2.0 * kPi * m.b)};
}

ProjectionNorms projection_norms(const HolomorphicQD& h, const TorusModuli& m) {
  const double v = 4.0 * kPi * m.b * std::abs(h.c);
  return {v, v};
}

ModuliVelocity moduli_velocity(const HolomorphicQD& h, const TorusModuli& m, double eta) {
  const double k = 0.5 * kPi * m.b * m.b * eta * eta;
  return {-k * h.c.imag(), k * h.c.real()};
}

ModuliVelocity moduli_velocity(const QuadDiff& q, const TorusModuli& m, double eta) {
  return moduli_velocity(project_hopf(q, m), m, eta);
}

double mean_hopf_defect(const QuadDiff& q, const TorusModuli& m) {
  check_period(q.grid, m);
  double sum = 0.0;
  for (const auto& z : q.phi) sum += z.real();
  return std::abs(sum * q.grid.h_s() * q.grid.h_theta());
}

double metric_rate_norm2(const TorusModuli& m, double da, double db, double dt) {
  const auto g0 = metric_tensor(m.a, m.b);
  const auto g1 = metric_tensor(m.a + da, m.b + db);
  const double h11 = (g1[0] - g0[0]) / dt, h12 = (g1[1] - g0[1]) / dt, h22 = (g1[2] - g0[2]) / dt;
  const double det = g0[0] * g0[2] - g0[1] * g0[1];
  const double i11 = g0[2] / det, i12 = -g0[1] / det, i22 = g0[0] / det;
  // tr(G^-1 H G^-1 H) with M = G^-1 H.
  const double m11 = i11 * h11 + i12 * h12, m12 = i11 * h12 + i12 * h22;
  const double m21 = i12 * h11 + i22 * h12, m22 = i12 * h12 + i22 * h22;
  return m11 * m11 + 2.0 * m12 * m21 + m22 * m22;
}

}  // namespace teichflow
