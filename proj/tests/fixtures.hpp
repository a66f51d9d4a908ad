#pragma once

// Shared generators for unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "teichflow/field.hpp"
#include "teichflow/flow.hpp"
#include "teichflow/initial_data.hpp"

namespace fixtures {

using namespace teichflow;

/// Random tangent field on interior rows, zero on finite boundary rows.
inline AmbientArray random_tangent(const MapField& u, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto& g = u.grid();
  AmbientArray v(g.n_s(), g.n_theta(), u.dim());
  for (int i = 0; i < g.n_s(); ++i) {
    if (!g.is_interior_row(i)) continue;
    for (int j = 0; j < g.n_theta(); ++j) {
      auto p = v.at(i, j);
      for (double& x : p) x = normal(rng);
      u.target().tangent_project_in_place(u.at(i, j), p);
    }
  }
  return v;
}

/// P_N(u + eps v).
inline MapField retract(const MapField& u, const AmbientArray& v, double eps) {
  MapField w = u;
  auto& d = w.mutable_values().data;
  for (std::size_t k = 0; k < d.size(); ++k) d[k] += eps * v.data[k];
  w.reproject();
  return w;
}

/// Flat L2 inner product sum <a, b> w_i h_theta.
inline double inner(const AmbientArray& a, const AmbientArray& b, const CylinderGrid& g) {
  double s = 0.0;
  for (int i = 0; i < g.n_s(); ++i) {
    double row = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) {
      const auto x = a.at(i, j), y = b.at(i, j);
      for (std::size_t c = 0; c < x.size(); ++c) row += x[c] * y[c];
    }
    s += row * g.cell_weight(i) * g.h_theta();
  }
  return s;
}

/// Relative gradient defect |<tau, v> + dE(v)| / (||tau|| ||v||).
inline double gradient_defect(const MapField& u, std::uint64_t seed, double eps = 1e-4) {
  const auto v = random_tangent(u, seed);
  const auto tau = tension(u);
  const double de = (energy(retract(u, v, eps)) - energy(retract(u, v, -eps))) / (2.0 * eps);
  const auto& g = u.grid();
  return std::abs(inner(tau, v, g) + de) / std::sqrt(inner(tau, tau, g) * inner(v, v, g));
}

/// Small-energy harmonic map on C(-L, L) driven by eps-perturbed boundary circles.
inline MapField boundary_driven_harmonic(double half_length, double eps, int rows_per_unit = 8, int n_theta = 32,
                                         double t_end = 6.0) {
  const auto grid = CylinderGrid::finite(-half_length, half_length,
                                         static_cast<int>(2 * half_length * rows_per_unit) + 1, n_theta);
  return cylinder_boundary_flow(boundary_driven_guess(grid, eps), t_end, 0.0, 1e-9).u;
}

inline double l1_hopf(const MapField& u) { return hopf_norms(hopf(u), ConformalMetric::flat()).l1; }

}  // namespace fixtures
