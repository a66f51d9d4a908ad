#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "teichflow/grid.hpp"
#include "teichflow/target.hpp"

namespace teichflow {

/// Row-major (i_s, i_theta, component) array of ambient vectors on a grid.
struct AmbientArray {
  int n_s = 0;
  int n_theta = 0;
  int dim = 0;
  std::vector<double> data;

  AmbientArray() = default;
  AmbientArray(int n_s_, int n_theta_, int dim_)
      : n_s(n_s_), n_theta(n_theta_), dim(dim_),
        data(static_cast<std::size_t>(n_s_) * n_theta_ * dim_, 0.0) {}

  std::size_t offset(int i, int j) const noexcept {
    return (static_cast<std::size_t>(i) * n_theta + j) * dim;
  }
  std::span<double> at(int i, int j) noexcept { return {data.data() + offset(i, j), std::size_t(dim)}; }
  std::span<const double> at(int i, int j) const noexcept {
    return {data.data() + offset(i, j), std::size_t(dim)};
  }
  std::span<const double> row(int i) const noexcept {
    return {data.data() + offset(i, 0), std::size_t(n_theta) * dim};
  }
  double max_abs() const noexcept;
};

/// A discrete map u: grid -> N, stored as ambient vectors.
class MapField {
 public:
  using Sampler = std::function<void(double s, double theta, std::span<double> out)>;

  /// Throws DomainError when a value is farther than kTangencyTolerance from N
  /// or the value count does not match the grid.
  MapField(CylinderGrid grid, TargetManifold target, std::vector<double> values);

  /// Samples fn at every node (theta includes the lattice shear) and
  /// projects the result onto N.
  static MapField sample(const CylinderGrid& grid, const TargetManifold& target, const Sampler& fn);
  static MapField constant(const CylinderGrid& grid, const TargetManifold& target,
                           std::span<const double> p);

  const CylinderGrid& grid() const noexcept { return grid_; }
  const TargetManifold& target() const noexcept { return target_; }
  int dim() const noexcept { return target_.ambient_dim(); }
  const AmbientArray& values() const noexcept { return values_; }
  std::span<const double> at(int i, int j) const noexcept { return values_.at(i, j); }

  /// Direct write access for integrators; call reproject() afterwards.
  AmbientArray& mutable_values() noexcept { return values_; }
  void reproject();
  double max_constraint_violation() const;

  /// Same node values on a different grid with identical node counts. For
  /// periodic grids this is the fixed-domain change of moduli.
  MapField with_grid(const CylinderGrid& grid) const;

 private:
  CylinderGrid grid_;
  TargetManifold target_;
  AmbientArray values_;
};

struct Derivatives {
  AmbientArray u_s;
  AmbientArray u_theta;
  AmbientArray u_ss;
  AmbientArray u_thetatheta;
};

/// Second-order differences in the true (s, theta) directions; theta wraps,
/// s wraps on periodic grids and is one-sided on finite boundaries.
Derivatives derivatives(const MapField& f);

/// Pointwise |u_s|^2, |u_theta|^2 and <u_s, u_theta> as used by every
/// quadratic functional. s-products average the two adjacent edge
/// differences, so the discrete energy is the sum of squared edge lengths
/// and its gradient is the standard five-point Laplacian.
struct GramField {
  int n_s = 0;
  int n_theta = 0;
  std::vector<double> ss;
  std::vector<double> tt;
  std::vector<double> st;
  std::size_t index(int i, int j) const noexcept { return static_cast<std::size_t>(i) * n_theta + j; }
};
GramField gram(const MapField& f);

/// E(u) = 1/2 sum (|u_s|^2 + |u_theta|^2) w_i h_theta. Flat metric only:
/// the energy is conformally invariant.
double energy(const MapField& f);
double energy(const MapField& f, Interval region);
/// Row energies 1/2 sum_j (|u_s|^2 + |u_theta|^2) h_theta.
std::vector<double> row_energy(const MapField& f);
/// Pointwise energy density on the nodes, row-major.
std::vector<double> energy_density(const MapField& f);

/// Discrete Laplacian, equal to -grad E / (h_s h_theta) at interior rows.
AmbientArray laplacian(const MapField& f);

/// Flat tension P_u(Delta u) on interior rows; boundary rows of finite grids
/// are zero.
AmbientArray tension(const MapField& f);
/// (sum rho^-2 |tau|^2 w_i h_theta)^{1/2}.
double tension_norm(const MapField& f, const ConformalMetric& g);
double tension_norm(const AmbientArray& tau, const CylinderGrid& grid, const ConformalMetric& g);

/// Coefficient field of phi dz^2.
struct QuadDiff {
  CylinderGrid grid;
  std::vector<std::complex<double>> phi;
  std::complex<double> at(int i, int j) const noexcept {
    return phi[static_cast<std::size_t>(i) * grid.n_theta() + j];
  }
};

/// phi = |u_s|^2 - |u_theta|^2 - 2i <u_s, u_theta>.
QuadDiff hopf(const MapField& f);

struct HopfNorms {
  double l1;
  double l2;
};
/// L1 = 2 sum |phi| (independent of rho), L2 = (sum 4 rho^-2 |phi|^2)^{1/2}.
HopfNorms hopf_norms(const QuadDiff& q, const ConformalMetric& g);
/// sum Re(phi) w_i h_theta over the region.
double hopf_real_integral(const QuadDiff& q, Interval region);

/// theta(s_i) = sum_j |u_theta|^2 h_theta.
double angular_energy(const MapField& f, int i);
std::vector<double> angular_energy_profile(const MapField& f);

/// Largest ambient distance between two values on row i.
double oscillation(const MapField& f, int i);
std::vector<double> oscillation_profile(const MapField& f);

/// T(s_i) = sum_j |tau|^2 h_theta (zero on boundary rows).
double tension_integrand(const MapField& f, int i);
std::vector<double> tension_profile(const AmbientArray& tau, const CylinderGrid& grid);

/// Periodic spectral differentiation matrix on n equispaced points, row-major.
const std::vector<double>& spectral_matrix(int n);

}  // namespace teichflow
