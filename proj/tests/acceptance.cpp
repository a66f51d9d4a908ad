// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "teichflow/analyzer.hpp"
#include "teichflow/hyperbolic.hpp"
#include "teichflow/ode_comparison.hpp"
#include "teichflow/torus.hpp"

using namespace teichflow;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome gradient_consistency() {
  const auto t0 = Clock::now();
  const auto g = CylinderGrid::finite(-5.0, 5.0, 128, 64);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    worst = std::max(worst, fixtures::gradient_defect(random_sphere_field(g, seed), 1000 + seed));
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-4 && secs < 30.0, fmt("max relative defect %.3e over 10 fields, %.2f s", worst, secs)};
}

Outcome energy_identity() {
  const auto grid = CylinderGrid::torus(0.5, 8.0, 32, 32);
  const auto s0 = FlowState::torus(random_sphere_field(grid, 7), moduli_of(grid), 1.0);
  // The stability bound shrinks as b grows, so stay well below it.
  const double dt = 0.5 * admissible_dt(s0);
  const double horizon = 1000 * dt;
  const auto run_with = [&](double step) {
    RunOptions o;
    o.dt = step;
    o.t_end = horizon;
    return run(s0, o);
  };
  const auto coarse = run_with(dt), fine = run_with(dt / 2);
  const auto mean = [](const RunResult& r) {
    double s = 0.0;
    for (std::size_t k = 1; k < r.ledger.size(); ++k) s += r.ledger[k].residual;
    return s / static_cast<double>(r.ledger.size() - 1);
  };
  bool monotone = true;
  for (const auto* r : {&coarse, &fine}) {
    for (std::size_t k = 1; k < r->ledger.size(); ++k) {
      monotone = monotone && r->ledger[k].energy <= r->ledger[k - 1].energy;
    }
  }
  const double ratio = mean(coarse) / mean(fine);
  const long steps = static_cast<long>(coarse.ledger.size()) - 1;
  return {ratio >= 1.6 && ratio <= 2.4 && monotone && steps >= 1000,
          fmt("residual halving ratio %.4f, %ld and %zu steps, E monotone %s, E %.6f -> %.6f", ratio, steps,
              fine.ledger.size() - 1, monotone ? "yes" : "no", coarse.ledger.front().energy,
              coarse.ledger.back().energy)};
}

Outcome winding_flow() {
  const auto grid = CylinderGrid::torus(0.0, 2 * pi, 64, 8);
  RunOptions o;
  o.t_end = 1.6;
  o.adaptive = true;
  const auto r = run(FlowState::torus(s_winding(grid), moduli_of(grid), 1.0), o);
  const double target = 4 * pi * pi * pi;
  double worst = 0.0;
  bool b_increasing = true, ell_decreasing = true;
  for (std::size_t k = 0; k < r.ledger.size(); ++k) {
    worst = std::max(worst, std::abs(r.ledger[k].energy * r.ledger[k].b / target - 1.0));
    if (k > 0) {
      b_increasing = b_increasing && r.ledger[k].b > r.ledger[k - 1].b;
      ell_decreasing = ell_decreasing && r.ledger[k].ell < r.ledger[k - 1].ell;
    }
  }
  double osc = 0.0;
  for (double v : oscillation_profile(r.final_state.u)) osc = std::max(osc, v);
  const long steps = static_cast<long>(r.ledger.size()) - 1;
  return {worst < 0.01 && b_increasing && ell_decreasing && steps >= 1000 && osc < 0.05,
          fmt("%ld steps, max |E b / 4pi^3 - 1| = %.2e, b %.3f -> %.3f, ell %.4f -> %.4f, final max osc %.2e",
              steps, worst, r.ledger.front().b, r.ledger.back().b, r.ledger.front().ell, r.ledger.back().ell, osc)};
}

Outcome collapse_scalings() {
  const std::vector<double> xs{25, 50, 100, 200, 400};
  const auto arc = verify_collapse_scalings(UnitSpeedCurve::planar_arc(1.0), xs);
  const auto seg = verify_collapse_scalings(UnitSpeedCurve::segment(1.0), xs);
  const auto near = [](double slope) { return std::abs(slope + 1.0) <= 0.05; };
  double ex_dev = 0.0, tension = 0.0;
  for (const auto& row : seg.rows) {
    ex_dev = std::max(ex_dev, std::abs(row.energy * row.x / (pi / 2) - 1.0));
    tension = std::max(tension, std::sqrt(row.tension_norm2));
  }
  const bool pass = near(arc.slope_energy) && near(arc.slope_tension) && near(arc.slope_hopf) && ex_dev <= 0.01 &&
                    tension <= 1e-10;
  return {pass, fmt("arc slopes E %.4f, tension^2 %.4f, hopf^2 %.4f (need -1 +- 0.05); segment max |E X/(pi L^2/2) - 1| "
                    "= %.1e, max ||tau|| = %.1e",
                    arc.slope_energy, arc.slope_tension, arc.slope_hopf, ex_dev, tension)};
}

Outcome decay_certificates() {
  bool pass = true;
  std::string detail;
  for (double lambda : {10.0, 20.0, 40.0}) {
    const auto u = fixtures::boundary_driven_harmonic(lambda, 0.05);
    const double e0 = energy(u);
    const auto c = certify_decay(u, e0);
    const bool ok = c.verdict != Verdict::declined && c.slice_bound && c.min_margin >= 0.0 && c.decay_exponent >= 1.0;
    pass = pass && ok;
    detail += fmt("L=%g: E0 %.3e, min margin %.3e, exponent %.3f, verdict %s; ", lambda, e0, c.min_margin,
                  c.decay_exponent, to_string(c.verdict).c_str());
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome ode_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = INFINITY;
  for (int k = 0; k < 100; ++k) {
    OdeComparisonInput in;
    in.s1 = -10.0 + 20.0 * u01(rng);
    in.s2 = in.s1 + 2.0 + 18.0 * u01(rng);
    in.e0 = 0.05 + 2.0 * u01(rng);
    in.f1 = 2.0 * in.e0 * u01(rng);
    in.f2 = 2.0 * in.e0 * u01(rng);
    const int nodes = 21 + static_cast<int>(400 * u01(rng));
    in.t.resize(nodes);
    // Mixture of smooth modes and sparse spikes, clipped at zero.
    const double a1 = u01(rng), a2 = u01(rng), w = 0.5 + 3 * u01(rng);
    for (int i = 0; i < nodes; ++i) {
      const double s = in.s1 + (in.s2 - in.s1) * i / (nodes - 1);
      double v = a1 * (1 + std::sin(w * s)) + a2 * std::exp(-std::abs(s - in.s1 - 1.0));
      if (u01(rng) < 0.05) v += 5.0 * u01(rng);
      in.t[i] = std::max(0.0, v);
    }
    worst = std::min(worst, ode_comparison_oracle(in).min_margin);
  }
  const double secs = seconds_since(t0);
  return {worst >= -1e-8 && secs < 5.0, fmt("min margin %.3e over 100 instances, %.3f s", worst, secs)};
}

Outcome decomposition() {
  const auto g = CylinderGrid::finite(-100.0, 100.0, 801, 32);
  const double pole[3] = {0.0, 0.0, 1.0};
  const auto c = MapField::constant(g, TargetManifold::sphere(2), pole);
  const auto one = gaussian_bumps(g, {{0.0, 1.0}});
  const auto two = gaussian_bumps(g, {{-40.0, 0.5}, {40.0, 0.5}});
  const auto dc = decompose(c, 0.1, 10.0), d1 = decompose(one, 0.1, 10.0), d2 = decompose(two, 0.1, 10.0);
  bool deterministic = true;
  for (int rep = 0; rep < 3; ++rep) {
    deterministic = deterministic && decompose(c, 0.1, 10.0).centers == dc.centers &&
                    decompose(one, 0.1, 10.0).centers == d1.centers && decompose(two, 0.1, 10.0).centers == d2.centers;
  }
  const auto list = [](const BranchDecomposition& d) {
    std::string s;
    for (double x : d.centers) s += (s.empty() ? "" : ",") + fmt("%g", x);
    return "{" + s + "}";
  };
  const bool pass = dc.interior_count() == 0 && d1.interior_count() == 1 && d2.interior_count() == 2 && deterministic;
  return {pass, fmt("centers %s %s %s, deterministic %s", list(dc).c_str(), list(d1).c_str(), list(d2).c_str(),
                    deterministic ? "yes" : "no")};
}

Outcome energy_loss() {
  bool pass = true;
  std::string detail;
  const auto check_fixture = [&](const char* name, const MapField& u) {
    const double l1 = fixtures::l1_hopf(u);
    const auto ledger = energy_loss_ledger(u, decompose(u, 0.1, 10.0), 2.0);
    double worst = 0.0;
    for (const auto& e : ledger.entries) worst = std::max(worst, std::abs(e.difference));
    pass = pass && l1 < 1e-3 && worst < 1e-2 && !ledger.entries.empty();
    detail += fmt("%s: L1 %.2e, max |diff| %.2e; ", name, l1, worst);
  };
  check_fixture("boundary-driven L=20", fixtures::boundary_driven_harmonic(20.0, 0.005));
  check_fixture("segment collapse X=100", curve_collapse_map(100.0, UnitSpeedCurve::segment(0.01), 1601, 8));

  const auto g = CylinderGrid::finite(-10.0, 10.0, 161, 64).with_theta_scheme(ThetaScheme::spectral);
  const auto tw = theta_winding(g);
  const auto ledger = energy_loss_ledger(tw, decompose(tw, 0.1, 10.0), 0.0);
  double worst = 0.0;
  for (const auto& e : ledger.entries) worst = std::max(worst, std::abs(e.difference / (2 * pi * (e.hi - e.lo)) - 1.0));
  pass = pass && worst <= 0.01 && !ledger.entries.empty();
  detail += fmt("theta winding: max |diff / 2pi|I| - 1| = %.2e", worst);
  return {pass, detail};
}

Outcome conformal_identities() {
  const auto fg = CylinderGrid::finite(-20.0, 20.0, 321, 32);
  const auto q = hopf(random_sphere_field(fg, 5));
  double l1_dev = 0.0;
  for (double ell : {0.05, 0.3, 1.0}) {
    if (collar_halflength(ell) < 20.0) continue;
    const double flat = hopf_norms(q, ConformalMetric::flat()).l1;
    l1_dev = std::max(l1_dev, std::abs(hopf_norms(q, ConformalMetric::collar(ell)).l1 - flat) / flat);
  }
  const double cdev = [&] {
    double r = 0.0;
    for (double b : {2 * pi, 9.0, 40.0}) {
      const auto tg = CylinderGrid::torus(0.7, b, 40, 24);
      const std::complex<double> c(0.3, -1.1);
      QuadDiff cq{tg, std::vector<std::complex<double>>(40 * 24, c)};
      const double want = 4 * pi * b * std::abs(c);
      r = std::max(r, std::abs(hopf_norms(cq, moduli_of(tg).metric()).l2 - want) / want);
      r = std::max(r, std::abs(projection_norms({c}, moduli_of(tg)).l2 - want) / want);
    }
    return r;
  }();
  const auto tg = CylinderGrid::torus(1.1, 7.5, 48, 32);
  const auto m = moduli_of(tg);
  const auto tq = hopf(random_sphere_field(tg, 8));
  const auto c = project_hopf(tq, m).c;
  QuadDiff cq{tg, std::vector<std::complex<double>>(tq.phi.size(), c)};
  const double idem = std::abs(project_hopf(cq, m).c - c) / std::abs(c);
  std::complex<double> resid = 0.0;
  double scale = 0.0;
  for (auto z : tq.phi) {
    resid += z - c;
    scale += std::abs(z);
  }
  const double orth = std::abs(resid) / scale;
  const bool pass = l1_dev <= 1e-12 && cdev <= 1e-12 && idem <= 1e-12 && orth <= 1e-12;
  return {pass, fmt("L1 flat vs collar %.1e, |c dz^2| vs 4 pi b |c| %.1e, idempotence %.1e, mean orthogonality %.1e",
                    l1_dev, cdev, idem, orth)};
}

Outcome collar_formulas() {
  const double lmax = 2 * std::asinh(1.0);
  const double closed = pi * pi / (2 * lmax);
  const double xdev = std::abs(collar_halflength(lmax) - closed) / closed;
  const double cap = std::sqrt(2.0) * std::asinh(1.0) / pi;
  double worst = -INFINITY;
  for (int k = 1; k <= 50; ++k) {
    const double ell = lmax * k / 50.0;
    worst = std::max(worst, collar_boundary_factor(ell) / cap - 1.0);
  }
  double thin = 0.0;
  for (double ell : {0.01, 0.1, 0.5, 1.0, 1.7}) {
    for (double f : {0.1, 0.5, 0.99, 1.0}) {
      const double delta = f * ell / 2;
      thin = std::max(thin, thin_halflength(ell, delta));
    }
  }
  // Rounding at the endpoint ell = 2 arsinh 1, where the bound is attained.
  const bool pass = xdev <= 1e-12 && worst <= 4e-16 && thin == 0.0;
  return {pass, fmt("X(2 arsinh 1) rel error %.1e, max rho(X)/bound - 1 = %.1e over 50 ell, max X_delta at "
                    "delta <= ell/2 = %g",
                    xdev, worst, thin)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"gradient consistency", gradient_consistency},
      {"energy identity", energy_identity},
      {"winding flow anchor", winding_flow},
      {"collapse map scalings", collapse_scalings},
      {"decay certificate", decay_certificates},
      {"ODE comparison oracle", ode_oracle},
      {"decomposition correctness", decomposition},
      {"energy-loss identity", energy_loss},
      {"conformal and normalization identities", conformal_identities},
      {"collar formulas", collar_formulas},
  };
  int failures = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
