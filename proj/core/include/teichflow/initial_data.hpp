#pragma once

#include <cstdint>
#include <vector>

#include "teichflow/field.hpp"

namespace teichflow {

/// u = (cos 2 pi k x / L, sin 2 pi k x / L) into S^1, x = s - s_min, L the
/// s-period (or length).
MapField s_winding(const CylinderGrid& grid, int k = 1);

/// u = (cos k theta, sin k theta) into S^1. DomainError on twisted grids,
/// where the map is not compatible with the identification.
MapField theta_winding(const CylinderGrid& grid, int k = 1);

struct RandomFieldOptions {
  int sphere_dim = 2;
  int s_modes = 3;
  int theta_modes = 3;
  double amplitude = 0.6;
};

/// Smooth random S^n-valued field: a random base point plus a decaying sum of
/// low Fourier modes in the grid's periodic coordinates, projected onto the
/// sphere. Seeded with std::mt19937_64.
MapField random_sphere_field(const CylinderGrid& grid, std::uint64_t seed, const RandomFieldOptions& opt = {});

struct Bump {
  double center;
  double energy;
};

/// S^2-valued field e3 + A_k exp(-(s - c_k)^2 / 2 w^2)(cos theta, sin theta, 0),
/// projected, with each amplitude A_k fitted so the isolated bump carries
/// the requested energy.
MapField gaussian_bumps(const CylinderGrid& grid, const std::vector<Bump>& bumps, double width = 1.0);

/// Degree-one harmonic sphere on the cylinder: inverse stereographic
/// projection of (2 / scale) tanh((z - center) / 2), z = s + i theta. Half of
/// its energy 4 pi lies within distance ~scale of the center.
MapField bubble(const CylinderGrid& grid, double scale, double center = 0.0);

}  // namespace teichflow
