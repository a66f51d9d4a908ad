#include "teichflow/initial_data.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "teichflow/errors.hpp"

namespace teichflow {

namespace {

constexpr double kPi = std::numbers::pi;

double period_of(const CylinderGrid& g) { return g.length(); }

}  // namespace

MapField s_winding(const CylinderGrid& grid, int k) {
  const double L = period_of(grid);
  return MapField::sample(grid, TargetManifold::circle(), [&](double s, double, std::span<double> out) {
    const double x = 2.0 * kPi * k * (s - grid.s_min()) / L;
    out[0] = std::cos(x);
    out[1] = std::sin(x);
  });
}

MapField theta_winding(const CylinderGrid& grid, int k) {
  if (grid.boundary() == BoundaryKind::twisted_periodic) {
    throw DomainError("theta winding is not defined on a twisted torus");
  }
  return MapField::sample(grid, TargetManifold::circle(), [&](double, double theta, std::span<double> out) {
    out[0] = std::cos(k * theta);
    out[1] = std::sin(k * theta);
  });
}

MapField random_sphere_field(const CylinderGrid& grid, std::uint64_t seed, const RandomFieldOptions& opt) {
  if (opt.sphere_dim < 1) throw DomainError("sphere dimension must be positive");
  const auto target = TargetManifold::sphere(opt.sphere_dim);
  const int dim = target.ambient_dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> base(dim);
  for (auto& v : base) v = normal(rng);
  target.project_in_place(base);
  // coeff[m][k][trig][c], trig = (cos|sin in xi) x (cos|sin in y).
  const int ms = opt.s_modes, mt = opt.theta_modes;
  std::vector<double> coeff(static_cast<std::size_t>(ms + 1) * (mt + 1) * 4 * dim);
  for (int m = 0; m <= ms; ++m) {
    for (int k = 0; k <= mt; ++k) {
      const double decay = opt.amplitude / ((1.0 + m) * (1.0 + m) * (1.0 + k) * (1.0 + k));
      for (int t = 0; t < 4 * dim; ++t) {
        coeff[((static_cast<std::size_t>(m) * (mt + 1) + k) * 4) * dim + t] = decay * normal(rng);
      }
    }
  }
  const double L = grid.length();
  std::vector<double> values(static_cast<std::size_t>(grid.n_s()) * grid.n_theta() * dim);
  for (int i = 0; i < grid.n_s(); ++i) {
    const double xi = 2.0 * kPi * (grid.s(i) - grid.s_min()) / L;
    for (int j = 0; j < grid.n_theta(); ++j) {
      const double y = j * grid.h_theta();
      double* p = values.data() + (static_cast<std::size_t>(i) * grid.n_theta() + j) * dim;
      for (int c = 0; c < dim; ++c) p[c] = base[c];
      for (int m = 0; m <= ms; ++m) {
        const double cm = std::cos(m * xi), sm = std::sin(m * xi);
        for (int k = 0; k <= mt; ++k) {
          const double ck = std::cos(k * y), sk = std::sin(k * y);
          const double basis[4] = {cm * ck, cm * sk, sm * ck, sm * sk};
          const double* a = coeff.data() + ((static_cast<std::size_t>(m) * (mt + 1) + k) * 4) * dim;
          for (int t = 0; t < 4; ++t) {
            for (int c = 0; c < dim; ++c) p[c] += a[t * dim + c] * basis[t];
          }
        }
      }
      target.project_in_place({p, std::size_t(dim)});
    }
  }
  return MapField(grid, target, std::move(values));
}

MapField gaussian_bumps(const CylinderGrid& grid, const std::vector<Bump>& bumps, double width) {
  if (!(width > 0.0)) throw DomainError("bump width must be positive");
  const auto target = TargetManifold::sphere(2);
  auto build = [&](const std::vector<double>& amps) {
    return MapField::sample(grid, target, [&](double s, double theta, std::span<double> out) {
      double a = 0.0;
      for (std::size_t k = 0; k < bumps.size(); ++k) {
        const double d = (s - bumps[k].center) / width;
        a += amps[k] * std::exp(-0.5 * d * d);
      }
      out[0] = a * std::cos(theta);
      out[1] = a * std::sin(theta);
      out[2] = 1.0;
    });
  };
  std::vector<double> amps(bumps.size(), 0.0);
  for (std::size_t k = 0; k < bumps.size(); ++k) {
    if (!(bumps[k].energy >= 0.0)) throw DomainError("bump energy must be nonnegative");
    std::vector<double> single(bumps.size(), 0.0);
    auto energy_at = [&](double a) {
      single[k] = a;
      return energy(build(single));
    };
    double lo = 0.0, hi = 1.0;
    while (energy_at(hi) < bumps[k].energy) {
      hi *= 2.0;
      if (hi > 1e3) throw DomainError("bump energy not attainable on this grid");
    }
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (energy_at(mid) < bumps[k].energy ? lo : hi) = mid;
    }
    amps[k] = 0.5 * (lo + hi);
  }
  return build(amps);
}

MapField bubble(const CylinderGrid& grid, double scale, double center) {
  if (!(scale > 0.0)) throw DomainError("bubble scale must be positive");
  return MapField::sample(grid, TargetManifold::sphere(2), [&](double s, double theta, std::span<double> out) {
    const std::complex<double> z(s - center, theta);
    const std::complex<double> w = (2.0 / scale) * std::tanh(0.5 * z);
    const double r2 = std::norm(w);
    if (!std::isfinite(r2)) {
      out[0] = 0.0;
      out[1] = 0.0;
      out[2] = 1.0;
      return;
    }
    out[0] = 2.0 * w.real() / (1.0 + r2);
    out[1] = 2.0 * w.imag() / (1.0 + r2);
    out[2] = (r2 - 1.0) / (1.0 + r2);
  });
}

}  // namespace teichflow
