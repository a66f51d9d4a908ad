#include "teichflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "teichflow/errors.hpp"

namespace teichflow {

namespace {

constexpr double kPi = std::numbers::pi;

// rho^2 at row i of the state's metric.
double rho2(const FlowState& s, int i) {
  if (s.moduli) return s.moduli->scale();
  const double r = s.metric.factor(s.u.grid().s(i));
  return r * r;
}

double proj_l2(const HolomorphicQD& h, const TorusModuli& m) { return projection_norms(h, m).l2; }

}  // namespace

FlowState FlowState::torus(MapField u, TorusModuli m, double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  if (!u.grid().is_periodic()) throw DomainError("coupled flow needs a periodic grid");
  auto g = u.grid().with_moduli(m.a, m.b);
  return FlowState{0.0, u.with_grid(g), m, ConformalMetric::flat(), eta};
}

FlowState FlowState::fixed(MapField u, ConformalMetric g) {
  return FlowState{0.0, std::move(u), std::nullopt, g, 1.0};
}

ConformalMetric FlowState::current_metric() const { return moduli ? moduli->metric() : metric; }

double admissible_dt(const FlowState& s, double c_cfl) {
  const auto& g = s.u.grid();
  const double h = std::min(g.h_s(), g.h_theta());
  double r2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.n_s(); ++i) r2 = std::min(r2, rho2(s, i));
  const double k = 1.0 + std::abs(g.shear());
  const double spectral = g.theta_scheme() == ThetaScheme::spectral ? 0.4 : 1.0;
  return c_cfl * spectral * h * h * r2 / (k * k);
}

FlowDrive compute_drive(const FlowState& s) {
  const auto& g = s.u.grid();
  FlowDrive d;
  d.tau_g = tension(s.u);
  double norm2 = 0.0;
  for (int i = 0; i < g.n_s(); ++i) {
    const double r2 = rho2(s, i);
    double row = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) {
      auto v = d.tau_g.at(i, j);
      for (double& x : v) {
        x /= r2;
        row += x * x;
      }
    }
    // ||tau_g||^2_{L2(g)} = sum rho^2 |tau_g|^2
    norm2 += r2 * row * g.cell_weight(i) * g.h_theta();
  }
  d.tension_norm = std::sqrt(norm2);
  d.energy = energy(s.u);
  if (s.moduli) {
    d.projection = project_hopf(hopf(s.u), *s.moduli);
    d.proj_norm = proj_l2(*d.projection, *s.moduli);
  }
  return d;
}

FlowState step(const FlowState& s, const FlowDrive& drive, double dt, StepDiagnostics* diag, double c_cfl) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  const double adm = admissible_dt(s, c_cfl);
  if (dt > adm * (1.0 + 1e-12)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "dt %.6g exceeds the stability bound %.6g", dt, adm);
    throw StepRejected(buf, adm);
  }
  const auto& g = s.u.grid();
  const int dim = s.u.dim();
  AmbientArray next = s.u.values();
  for (std::size_t k = 0; k < next.data.size(); ++k) next.data[k] += dt * drive.tau_g.data[k];
  for (std::size_t k = 0; k < next.data.size(); k += dim) {
    s.u.target().project_in_place({next.data.data() + k, std::size_t(dim)});
  }

  FlowState out{s.t + dt, s.u, s.moduli, s.metric, s.eta};
  double da = 0.0, db = 0.0;
  if (s.moduli) {
    const auto v = moduli_velocity(*drive.projection, *s.moduli, s.eta);
    da = dt * v.da;
    db = dt * v.db;
    const TorusModuli m{s.moduli->a + da, s.moduli->b + db};
    if (!(m.b > 0.0)) throw NumericalFailure("torus modulus b left (0, inf)");
    out.moduli = m;
    out.u = MapField(g.with_moduli(m.a, m.b), s.u.target(), std::move(next.data));
  } else {
    out.u = MapField(g, s.u.target(), std::move(next.data));
  }

  if (diag) {
    diag->energy_before = drive.energy;
    diag->energy_after = energy(out.u);
    double du = 0.0;
    const auto& u0 = s.u.values();
    const auto& u1 = out.u.values();
    for (int i = 0; i < g.n_s(); ++i) {
      double row = 0.0;
      for (int j = 0; j < g.n_theta(); ++j) {
        const auto a = u0.at(i, j), b = u1.at(i, j);
        for (int c = 0; c < dim; ++c) {
          const double d = (b[c] - a[c]) / dt;
          row += d * d;
        }
      }
      du += rho2(s, i) * row * g.cell_weight(i) * g.h_theta();
    }
    diag->du_norm2 = du;
    diag->dg_norm2_over_eta2 = s.moduli ? metric_rate_norm2(*s.moduli, da, db, dt) / (s.eta * s.eta) : 0.0;
    diag->residual =
        std::abs((diag->energy_after - diag->energy_before) / dt + diag->du_norm2 + diag->dg_norm2_over_eta2);
    if (!std::isfinite(diag->energy_after)) throw NumericalFailure("energy became non-finite");
  }
  return out;
}

FlowState step(const FlowState& s, double dt, double c_cfl) { return step(s, compute_drive(s), dt, nullptr, c_cfl); }

std::string ledger_csv_header() {
  return "step,t,E,du_norm2,dg_norm2_over_eta2,residual,a,b,ell,tension_norm,proj_norm";
}

std::string ledger_csv_row(const LedgerRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.step, r.t,
                r.energy, r.du_norm2, r.dg_norm2_over_eta2, r.residual, r.a, r.b, r.ell, r.tension_norm, r.proj_norm);
  return buf;
}

RunResult run(const FlowState& initial, const RunOptions& opt) {
  RunResult res{initial, {}, {}};
  FlowState& s = res.final_state;
  FlowDrive drive = compute_drive(s);
  auto record = [&](int n, const StepDiagnostics& d) {
    LedgerRecord r;
    r.step = n;
    r.t = s.t;
    r.energy = drive.energy;
    r.du_norm2 = d.du_norm2;
    r.dg_norm2_over_eta2 = d.dg_norm2_over_eta2;
    r.residual = d.residual;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.a = s.moduli ? s.moduli->a : nan;
    r.b = s.moduli ? s.moduli->b : nan;
    r.ell = s.moduli ? s.moduli->ell() : nan;
    r.tension_norm = drive.tension_norm;
    r.proj_norm = drive.proj_norm;
    res.ledger.push_back(r);
    if (opt.on_record) opt.on_record(r);
  };
  auto snapshot = [&](long n) {
    if (opt.snapshot_every <= 0 || n % opt.snapshot_every != 0) return;
    res.samples.push_back({s.t, drive.tension_norm, drive.proj_norm, drive.energy,
                           s.moduli ? s.moduli->ell() : std::numeric_limits<double>::quiet_NaN()});
    if (opt.on_snapshot) opt.on_snapshot(s, drive);
  };
  record(0, {});
  snapshot(0);
  long n = 0;
  const double eps = 1e-12 * std::max(1.0, std::abs(opt.t_end));
  while (s.t < opt.t_end - eps) {
    if (n >= opt.max_steps) throw NumericalFailure("step budget exhausted before t_end");
    double dt = opt.dt > 0.0 ? opt.dt : admissible_dt(s, opt.c_cfl);
    if (opt.adaptive) dt = std::min(dt, admissible_dt(s, opt.c_cfl));
    dt = std::min(dt, opt.t_end - s.t);
    StepDiagnostics d;
    try {
      s = step(s, drive, dt, &d, opt.c_cfl);
    } catch (const StepRejected& e) {
      throw StepRejected("step " + std::to_string(n + 1) + ": " + e.what(), e.admissible_dt());
    } catch (const NumericalFailure& e) {
      throw NumericalFailure("step " + std::to_string(n + 1) + ": " + e.what());
    }
    ++n;
    drive = compute_drive(s);
    record(static_cast<int>(n), d);
    snapshot(n);
  }
  if (opt.snapshot_every > 0 && n % opt.snapshot_every != 0) {
    res.samples.push_back({s.t, drive.tension_norm, drive.proj_norm, drive.energy,
                           s.moduli ? s.moduli->ell() : std::numeric_limits<double>::quiet_NaN()});
    if (opt.on_snapshot) opt.on_snapshot(s, drive);
  }
  return res;
}

AlmostMinimalExtraction extract_almost_minimal(const std::vector<AlmostMinimalSample>& samples,
                                               double tension_threshold, double proj_threshold) {
  AlmostMinimalExtraction out;
  std::map<int, AlmostMinimalCertificate> best;
  for (const auto& x : samples) {
    if (!(x.tension_norm < tension_threshold) || !(x.proj_norm < proj_threshold)) continue;
    const AlmostMinimalCertificate c{x.t, x.tension_norm, x.proj_norm, x.energy, x.ell};
    out.qualifying.push_back(c);
    const int window = x.t < 1.0 ? -1 : static_cast<int>(std::floor(std::log2(x.t)));
    auto score = [](const AlmostMinimalCertificate& v) {
      return v.tension_norm * v.tension_norm + v.proj_norm * v.proj_norm;
    };
    auto it = best.find(window);
    if (it == best.end() || score(c) < score(it->second)) best[window] = c;
  }
  for (const auto& [w, c] : best) out.selected.push_back(c);
  return out;
}

BoundaryFlowResult cylinder_boundary_flow(const MapField& u0, double t_end, double dt, double tol,
                                          const ConformalMetric& g) {
  if (u0.grid().is_periodic()) throw DomainError("boundary flow needs a finite cylinder");
  FlowState s = FlowState::fixed(u0, g);
  if (dt <= 0.0) dt = admissible_dt(s);
  BoundaryFlowResult r{u0, false, 0.0, 0.0, 0, ""};
  while (true) {
    const FlowDrive d = compute_drive(s);
    r.tension_norm = tension_norm(tension(s.u), s.u.grid(), ConformalMetric::flat());
    if (r.tension_norm < tol) {
      r.converged = true;
      break;
    }
    if (s.t >= t_end - 1e-12 * std::max(1.0, t_end)) break;
    s = step(s, d, std::min(dt, t_end - s.t), nullptr);
    ++r.steps;
  }
  r.u = s.u;
  r.t = s.t;
  r.status = r.converged ? "converged" : "not converged";
  return r;
}

MapField boundary_driven_guess(const CylinderGrid& grid, double eps) {
  const double mid = 0.5 * (grid.s_min() + grid.s_max());
  const double half = 0.5 * grid.length();
  return MapField::sample(grid, TargetManifold::sphere(2), [&](double s, double theta, std::span<double> out) {
    const double a = eps * std::cosh(s - mid) / std::cosh(half);
    out[0] = a * std::cos(theta);
    out[1] = a * std::sin(theta);
    out[2] = 1.0;
  });
}

}  // namespace teichflow
