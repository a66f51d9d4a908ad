#include "teichflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "teichflow/errors.hpp"
#include "teichflow/parallel.hpp"

namespace teichflow {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

int wrap(int j, int n) { return j < 0 ? j + n : (j >= n ? j - n : j); }

// First theta-derivative of one row (central differences or spectral).
void theta_derivative(const CylinderGrid& g, std::span<const double> row, int dim, std::span<double> out) {
  const int n = g.n_theta();
  if (g.theta_scheme() == ThetaScheme::spectral) {
    const auto& d = spectral_matrix(n);
    std::fill(out.begin(), out.end(), 0.0);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double c = d[static_cast<std::size_t>(j) * n + k];
        if (c == 0.0) continue;
        for (int c2 = 0; c2 < dim; ++c2) out[j * dim + c2] += c * row[k * dim + c2];
      }
    }
    return;
  }
  const double inv = 1.0 / (2.0 * g.h_theta());
  for (int j = 0; j < n; ++j) {
    const int jp = wrap(j + 1, n), jm = wrap(j - 1, n);
    for (int c = 0; c < dim; ++c) out[j * dim + c] = (row[jp * dim + c] - row[jm * dim + c]) * inv;
  }
}

// Second theta-derivative of one row. Spectral mode reuses the first
// derivative so that the operator is D*D, the exact energy gradient.
void theta_second(const CylinderGrid& g, std::span<const double> row, std::span<const double> d1, int dim,
                  std::span<double> out) {
  const int n = g.n_theta();
  if (g.theta_scheme() == ThetaScheme::spectral) {
    theta_derivative(g, d1, dim, out);
    return;
  }
  const double inv = 1.0 / (g.h_theta() * g.h_theta());
  for (int j = 0; j < n; ++j) {
    const int jp = wrap(j + 1, n), jm = wrap(j - 1, n);
    for (int c = 0; c < dim; ++c) {
      out[j * dim + c] = (row[jp * dim + c] - 2.0 * row[j * dim + c] + row[jm * dim + c]) * inv;
    }
  }
}

AmbientArray theta_derivatives(const MapField& f) {
  const auto& g = f.grid();
  const auto& u = f.values();
  AmbientArray out(g.n_s(), g.n_theta(), f.dim());
  parallel_for(g.n_s(), [&](int b, int e) {
    for (int i = b; i < e; ++i) {
      std::span<double> dst{out.data.data() + out.offset(i, 0), std::size_t(g.n_theta()) * f.dim()};
      theta_derivative(g, u.row(i), f.dim(), dst);
    }
  });
  return out;
}

// Row indices of the s-neighbours; -1 when absent at a finite boundary.
struct SNeighbours {
  int prev;
  int next;
};

SNeighbours s_neighbours(const CylinderGrid& g, int i) {
  const int n = g.n_s();
  if (g.is_periodic()) return {wrap(i - 1, n), wrap(i + 1, n)};
  return {i > 0 ? i - 1 : -1, i < n - 1 ? i + 1 : -1};
}

}  // namespace

double AmbientArray::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::abs(v));
  return m;
}

MapField::MapField(CylinderGrid grid, TargetManifold target, std::vector<double> values)
    : grid_(grid), target_(target), values_(grid.n_s(), grid.n_theta(), target.ambient_dim()) {
  if (values.size() != values_.data.size()) {
    throw DomainError("map field value count does not match grid and target");
  }
  values_.data = std::move(values);
  for (double v : values_.data) {
    if (!std::isfinite(v)) throw DomainError("map field has non-finite values");
  }
  if (max_constraint_violation() > kTangencyTolerance) {
    throw DomainError("map field values are not on the target");
  }
}

MapField MapField::sample(const CylinderGrid& grid, const TargetManifold& target, const Sampler& fn) {
  const int dim = target.ambient_dim();
  std::vector<double> v(static_cast<std::size_t>(grid.n_s()) * grid.n_theta() * dim);
  for (int i = 0; i < grid.n_s(); ++i) {
    for (int j = 0; j < grid.n_theta(); ++j) {
      std::span<double> p{v.data() + (static_cast<std::size_t>(i) * grid.n_theta() + j) * dim, std::size_t(dim)};
      fn(grid.s(i), grid.theta(i, j), p);
      target.project_in_place(p);
    }
  }
  return MapField(grid, target, std::move(v));
}

MapField MapField::constant(const CylinderGrid& grid, const TargetManifold& target, std::span<const double> p) {
  if (static_cast<int>(p.size()) != target.ambient_dim()) throw DomainError("constant has wrong dimension");
  return sample(grid, target, [&](double, double, std::span<double> out) { std::copy(p.begin(), p.end(), out.begin()); });
}

void MapField::reproject() {
  const int dim = target_.ambient_dim();
  for (std::size_t k = 0; k < values_.data.size(); k += dim) {
    target_.project_in_place({values_.data.data() + k, std::size_t(dim)});
  }
}

double MapField::max_constraint_violation() const {
  const int dim = target_.ambient_dim();
  double m = 0.0;
  for (std::size_t k = 0; k < values_.data.size(); k += dim) {
    m = std::max(m, target_.distance_to({values_.data.data() + k, std::size_t(dim)}));
  }
  return m;
}

MapField MapField::with_grid(const CylinderGrid& grid) const {
  if (grid.n_s() != grid_.n_s() || grid.n_theta() != grid_.n_theta()) {
    throw DomainError("with_grid needs identical node counts");
  }
  return MapField(grid, target_, values_.data);
}

const std::vector<double>& spectral_matrix(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<double>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  const double h = 2.0 * std::numbers::pi / n;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      const int m = j - k;
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      const double x = 0.5 * m * h;
      d[static_cast<std::size_t>(j) * n + k] =
          n % 2 == 0 ? 0.5 * sign / std::tan(x) : 0.5 * sign / std::sin(x);
    }
  }
  return cache.emplace(n, std::move(d)).first->second;
}

Derivatives derivatives(const MapField& f) {
  const auto& g = f.grid();
  const int ns = g.n_s(), nt = g.n_theta(), dim = f.dim();
  const double hs = g.h_s(), kappa = g.shear();
  const auto& u = f.values();
  Derivatives d{AmbientArray(ns, nt, dim), AmbientArray(ns, nt, dim), AmbientArray(ns, nt, dim),
                AmbientArray(ns, nt, dim)};
  const AmbientArray dth = theta_derivatives(f);
  AmbientArray dtt(ns, nt, dim);
  for (int i = 0; i < ns; ++i) {
    std::span<double> dst{dtt.data.data() + dtt.offset(i, 0), std::size_t(nt) * dim};
    theta_second(g, u.row(i), dth.row(i), dim, dst);
  }
  for (int i = 0; i < ns; ++i) {
    const auto nb = s_neighbours(g, i);
    for (int j = 0; j < nt; ++j) {
      for (int c = 0; c < dim; ++c) {
        const double ui = u.at(i, j)[c];
        double ds, dss, dst = 0.0;
        if (nb.prev >= 0 && nb.next >= 0) {
          ds = (u.at(nb.next, j)[c] - u.at(nb.prev, j)[c]) / (2.0 * hs);
          dss = (u.at(nb.next, j)[c] - 2.0 * ui + u.at(nb.prev, j)[c]) / (hs * hs);
          dst = (dth.at(nb.next, j)[c] - dth.at(nb.prev, j)[c]) / (2.0 * hs);
        } else {
          const int step = nb.next >= 0 ? 1 : -1;
          const double u1 = u.at(i + step, j)[c], u2 = u.at(i + 2 * step, j)[c], u3 = u.at(i + 3 * step, j)[c];
          ds = step * (-3.0 * ui + 4.0 * u1 - u2) / (2.0 * hs);
          dss = (2.0 * ui - 5.0 * u1 + 4.0 * u2 - u3) / (hs * hs);
        }
        const double t1 = dth.at(i, j)[c], t2 = dtt.at(i, j)[c];
        d.u_s.at(i, j)[c] = ds - kappa * t1;
        d.u_theta.at(i, j)[c] = t1;
        d.u_ss.at(i, j)[c] = dss - 2.0 * kappa * dst + kappa * kappa * t2;
        d.u_thetatheta.at(i, j)[c] = t2;
      }
    }
  }
  return d;
}

GramField gram(const MapField& f) {
  const auto& g = f.grid();
  const int ns = g.n_s(), nt = g.n_theta(), dim = f.dim();
  const double hs = g.h_s(), ht = g.h_theta(), kappa = g.shear();
  const bool spectral = g.theta_scheme() == ThetaScheme::spectral;
  const auto& u = f.values();
  const AmbientArray dth = theta_derivatives(f);
  GramField out{ns, nt, std::vector<double>(static_cast<std::size_t>(ns) * nt),
                std::vector<double>(static_cast<std::size_t>(ns) * nt),
                std::vector<double>(static_cast<std::size_t>(ns) * nt)};
  parallel_for(ns, [&](int b, int e) {
    std::vector<double> dl(dim);
    for (int i = b; i < e; ++i) {
      const auto nb = s_neighbours(g, i);
      for (int j = 0; j < nt; ++j) {
        const auto ui = u.at(i, j);
        double gll = 0.0;
        int edges = 0;
        if (nb.prev >= 0) {
          gll += dist2(ui, u.at(nb.prev, j));
          ++edges;
        }
        if (nb.next >= 0) {
          gll += dist2(ui, u.at(nb.next, j));
          ++edges;
        }
        gll /= edges * hs * hs;
        const int ip = nb.next >= 0 ? nb.next : i, im = nb.prev >= 0 ? nb.prev : i;
        const double span_s = (ip - im == 2 || g.is_periodic()) ? 2.0 * hs : hs;
        for (int c = 0; c < dim; ++c) dl[c] = (u.at(ip, j)[c] - u.at(im, j)[c]) / span_s;
        const double glt = dot(dl, dth.at(i, j));
        double gtt;
        if (spectral) {
          gtt = dot(dth.at(i, j), dth.at(i, j));
        } else {
          gtt = 0.5 * (dist2(ui, u.at(i, wrap(j + 1, nt))) + dist2(ui, u.at(i, wrap(j - 1, nt)))) / (ht * ht);
        }
        const auto k = out.index(i, j);
        out.ss[k] = gll - 2.0 * kappa * glt + kappa * kappa * gtt;
        out.tt[k] = gtt;
        out.st[k] = glt - kappa * gtt;
      }
    }
  });
  return out;
}

std::vector<double> row_energy(const MapField& f) {
  const auto gm = gram(f);
  const auto& g = f.grid();
  std::vector<double> rows(g.n_s(), 0.0);
  for (int i = 0; i < g.n_s(); ++i) {
    double s = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) {
      const auto k = gm.index(i, j);
      s += gm.ss[k] + gm.tt[k];
    }
    rows[i] = 0.5 * s * g.h_theta();
  }
  return rows;
}

std::vector<double> energy_density(const MapField& f) {
  const auto gm = gram(f);
  std::vector<double> e(gm.ss.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = 0.5 * (gm.ss[k] + gm.tt[k]);
  return e;
}

double energy(const MapField& f) {
  const auto rows = row_energy(f);
  double e = 0.0;
  for (int i = 0; i < f.grid().n_s(); ++i) e += f.grid().cell_weight(i) * rows[i];
  return e;
}

double energy(const MapField& f, Interval region) {
  if (region.length() <= 0.0) return 0.0;
  const auto& g = f.grid();
  if (!g.is_periodic() && (region.lo < g.s_min() - 1e-9 * g.length() || region.hi > g.s_max() + 1e-9 * g.length())) {
    throw DomainError("energy region exceeds the grid range");
  }
  const auto rows = row_energy(f);
  double e = 0.0;
  for (int i = 0; i < g.n_s(); ++i) e += g.cell_weight(i, region) * rows[i];
  return e;
}

AmbientArray laplacian(const MapField& f) {
  const auto& g = f.grid();
  const int ns = g.n_s(), nt = g.n_theta(), dim = f.dim();
  const double hs = g.h_s(), kappa = g.shear();
  const auto& u = f.values();
  const AmbientArray dth = theta_derivatives(f);
  AmbientArray out(ns, nt, dim);
  parallel_for(ns, [&](int b, int e) {
    std::vector<double> dtt(static_cast<std::size_t>(nt) * dim);
    for (int i = b; i < e; ++i) {
      if (!g.is_interior_row(i)) continue;
      const auto nb = s_neighbours(g, i);
      theta_second(g, u.row(i), dth.row(i), dim, dtt);
      for (int j = 0; j < nt; ++j) {
        auto dst = out.at(i, j);
        for (int c = 0; c < dim; ++c) {
          const double dss = (u.at(nb.next, j)[c] - 2.0 * u.at(i, j)[c] + u.at(nb.prev, j)[c]) / (hs * hs);
          double v = dss + (1.0 + kappa * kappa) * dtt[j * dim + c];
          if (kappa != 0.0) v -= 2.0 * kappa * (dth.at(nb.next, j)[c] - dth.at(nb.prev, j)[c]) / (2.0 * hs);
          dst[c] = v;
        }
      }
    }
  });
  return out;
}

AmbientArray tension(const MapField& f) {
  AmbientArray tau = laplacian(f);
  if (!f.target().is_round()) return tau;
  const auto& g = f.grid();
  for (int i = 0; i < g.n_s(); ++i) {
    for (int j = 0; j < g.n_theta(); ++j) f.target().tangent_project_in_place(f.at(i, j), tau.at(i, j));
  }
  return tau;
}

double tension_norm(const AmbientArray& tau, const CylinderGrid& grid, const ConformalMetric& g) {
  double s = 0.0;
  for (int i = 0; i < grid.n_s(); ++i) {
    if (!grid.is_interior_row(i)) continue;
    double row = 0.0;
    for (int j = 0; j < grid.n_theta(); ++j) row += dot(tau.at(i, j), tau.at(i, j));
    const double rho = g.factor(grid.s(i));
    s += row * grid.cell_weight(i) * grid.h_theta() / (rho * rho);
  }
  return std::sqrt(s);
}

double tension_norm(const MapField& f, const ConformalMetric& g) {
  return tension_norm(tension(f), f.grid(), g);
}

QuadDiff hopf(const MapField& f) {
  const auto gm = gram(f);
  QuadDiff q{f.grid(), std::vector<std::complex<double>>(gm.ss.size())};
  for (std::size_t k = 0; k < q.phi.size(); ++k) q.phi[k] = {gm.ss[k] - gm.tt[k], -2.0 * gm.st[k]};
  return q;
}

HopfNorms hopf_norms(const QuadDiff& q, const ConformalMetric& g) {
  const auto& grid = q.grid;
  double l1 = 0.0, l2 = 0.0;
  for (int i = 0; i < grid.n_s(); ++i) {
    double r1 = 0.0, r2 = 0.0;
    for (int j = 0; j < grid.n_theta(); ++j) {
      const double a = std::abs(q.at(i, j));
      r1 += a;
      r2 += a * a;
    }
    const double w = grid.cell_weight(i) * grid.h_theta();
    const double rho = g.factor(grid.s(i));
    l1 += 2.0 * r1 * w;
    l2 += 4.0 * r2 * w / (rho * rho);
  }
  return {l1, std::sqrt(l2)};
}

double hopf_real_integral(const QuadDiff& q, Interval region) {
  const auto& grid = q.grid;
  double s = 0.0;
  for (int i = 0; i < grid.n_s(); ++i) {
    const double w = grid.cell_weight(i, region);
    if (w == 0.0) continue;
    double r = 0.0;
    for (int j = 0; j < grid.n_theta(); ++j) r += q.at(i, j).real();
    s += r * w * grid.h_theta();
  }
  return s;
}

std::vector<double> angular_energy_profile(const MapField& f) {
  const auto gm = gram(f);
  const auto& g = f.grid();
  std::vector<double> out(g.n_s(), 0.0);
  for (int i = 0; i < g.n_s(); ++i) {
    double s = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) s += gm.tt[gm.index(i, j)];
    out[i] = s * g.h_theta();
  }
  return out;
}

double angular_energy(const MapField& f, int i) {
  const auto& g = f.grid();
  if (i < 0 || i >= g.n_s()) throw DomainError("slice index out of range");
  const int nt = g.n_theta(), dim = f.dim();
  const auto row = f.values().row(i);
  double s = 0.0;
  if (g.theta_scheme() == ThetaScheme::spectral) {
    std::vector<double> d(static_cast<std::size_t>(nt) * dim);
    theta_derivative(g, row, dim, d);
    s = dot(d, d);
  } else {
    for (int j = 0; j < nt; ++j) {
      s += dist2(row.subspan(std::size_t(j) * dim, dim), row.subspan(std::size_t(wrap(j + 1, nt)) * dim, dim));
    }
    s /= g.h_theta() * g.h_theta();
  }
  return s * g.h_theta();
}

double oscillation(const MapField& f, int i) {
  const auto& g = f.grid();
  if (i < 0 || i >= g.n_s()) throw DomainError("slice index out of range");
  double m = 0.0;
  for (int j = 0; j < g.n_theta(); ++j) {
    for (int k = j + 1; k < g.n_theta(); ++k) m = std::max(m, dist2(f.at(i, j), f.at(i, k)));
  }
  return std::sqrt(m);
}

std::vector<double> oscillation_profile(const MapField& f) {
  std::vector<double> out(f.grid().n_s());
  parallel_for(f.grid().n_s(), [&](int b, int e) {
    for (int i = b; i < e; ++i) out[i] = oscillation(f, i);
  });
  return out;
}

std::vector<double> tension_profile(const AmbientArray& tau, const CylinderGrid& grid) {
  std::vector<double> out(grid.n_s(), 0.0);
  for (int i = 0; i < grid.n_s(); ++i) {
    if (!grid.is_interior_row(i)) continue;
    double s = 0.0;
    for (int j = 0; j < grid.n_theta(); ++j) s += dot(tau.at(i, j), tau.at(i, j));
    out[i] = s * grid.h_theta();
  }
  return out;
}

double tension_integrand(const MapField& f, int i) {
  if (i < 0 || i >= f.grid().n_s()) throw DomainError("slice index out of range");
  return tension_profile(tension(f), f.grid())[i];
}

}  // namespace teichflow
