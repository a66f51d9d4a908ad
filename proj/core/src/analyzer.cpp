#include "teichflow/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "teichflow/errors.hpp"
#include "teichflow/torus.hpp"

namespace teichflow {

namespace {

double weighted_sum(const CylinderGrid& g, const std::vector<double>& rows, Interval region) {
  double s = 0.0;
  for (int i = 0; i < g.n_s(); ++i) {
    const double w = g.cell_weight(i, region);
    if (w > 0.0) s += w * rows[i];
  }
  return s;
}

std::vector<Chunk> chunks_from_rows(const CylinderGrid& g, const std::vector<double>& rows) {
  const double tol = 1e-9 * std::max(1.0, g.length());
  std::vector<Chunk> out;
  const int k_lo = static_cast<int>(std::ceil(g.s_min() + 1.0 - tol));
  const int k_hi = static_cast<int>(std::floor(g.s_max() - 2.0 + tol));
  for (int k = k_lo; k <= k_hi; ++k) {
    out.push_back({k, weighted_sum(g, rows, {k - 1.0, k + 2.0})});
  }
  return out;
}

bool rows_in(const CylinderGrid& g, int i, double lo, double hi) {
  const double tol = 1e-12 * std::max(1.0, g.length());
  return g.s(i) >= lo - tol && g.s(i) <= hi + tol;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::declined:
      return "declined";
  }
  return "?";
}

std::vector<Chunk> chunk_energies(const MapField& f) { return chunks_from_rows(f.grid(), row_energy(f)); }

BranchDecomposition decompose(const MapField& f, double delta, double gap) {
  const auto& g = f.grid();
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(gap > 0.0)) throw DomainError("gap must be positive");
  if (0.5 * g.length() < 3.0) throw DomainError("decomposition needs half-length at least 3");
  const auto rows = row_energy(f);
  BranchDecomposition d{delta, gap, g.s_min(), g.s_max(), {}, {}, {}};
  for (const auto& c : chunks_from_rows(g, rows)) {
    if (c.energy >= 0.5 * delta) d.heavy_chunks.push_back(c);
  }

  std::vector<Chunk> free;
  for (const auto& c : d.heavy_chunks) {
    const double p = c.position();
    if (p - g.s_min() > gap && g.s_max() - p > gap) free.push_back(c);
  }

  d.centers.push_back(g.s_min());
  std::size_t a = 0;
  while (a < free.size()) {
    std::size_t b = a + 1;
    while (b < free.size() && free[b].position() - free[b - 1].position() <= gap) ++b;
    double wsum = 0.0, psum = 0.0;
    for (std::size_t k = a; k < b; ++k) {
      wsum += free[k].energy;
      psum += free[k].energy * free[k].position();
    }
    const double centroid = psum / wsum;
    const bool fits = std::all_of(free.begin() + a, free.begin() + b,
                                  [&](const Chunk& c) { return std::abs(c.position() - centroid) <= gap; });
    if (fits) {
      d.centers.push_back(centroid);
    } else {
      std::size_t k = a;
      while (k < b) {
        const double reach = free[k].position() + gap;
        std::size_t r = k;
        while (r + 1 < b && free[r + 1].position() <= reach) ++r;
        const double rep = free[r].position();
        d.centers.push_back(rep);
        while (k < b && free[k].position() <= rep + gap) ++k;
      }
    }
    a = b;
  }
  d.centers.push_back(g.s_max());

  const auto osc = oscillation_profile(f);
  const auto theta = angular_energy_profile(f);
  const auto q = hopf(f);
  for (std::size_t m = 1; m < d.centers.size(); ++m) {
    const double lo = d.centers[m - 1], hi = d.centers[m];
    IntervalSummary s{lo, hi, weighted_sum(g, rows, {lo, hi}), 0.0, 0.0, 0.5 * hopf_real_integral(q, {lo, hi})};
    for (int i = 0; i < g.n_s(); ++i) {
      if (!rows_in(g, i, lo, hi)) continue;
      s.max_oscillation = std::max(s.max_oscillation, osc[i]);
      s.max_angular_energy = std::max(s.max_angular_energy, theta[i]);
    }
    d.intervals.push_back(s);
  }
  return d;
}

DecayCertificate certify_decay(const MapField& f, double e0, const AnalysisParams& p) {
  const auto& g = f.grid();
  if (!(e0 >= 0.0)) throw DomainError("E0 must be nonnegative");
  DecayCertificate c;
  c.e0 = e0;
  c.c_constructive = 2.0 * e0;
  c.lambda = p.lambda;
  const double mid = 0.5 * (g.s_min() + g.s_max());
  const double L = 0.5 * g.length();
  c.half_length = L;

  const auto rows = row_energy(f);
  for (const auto& ch : chunks_from_rows(g, rows)) {
    if (ch.energy >= 0.5 * p.delta) {
      c.verdict = Verdict::declined;
      c.offending_chunk = ch.k;
      c.reason = "chunk " + std::to_string(ch.k) + " carries energy " + std::to_string(ch.energy) +
                 " >= delta/2 = " + std::to_string(0.5 * p.delta);
      return c;
    }
  }
  const auto tau = tension(f);
  const auto tprof = tension_profile(tau, g);
  c.tension_norm2 = 0.0;
  for (int i = 0; i < g.n_s(); ++i) c.tension_norm2 += tprof[i] * g.cell_weight(i);
  if (c.tension_norm2 >= p.delta) {
    c.verdict = Verdict::declined;
    c.reason = "||tau||^2 = " + std::to_string(c.tension_norm2) + " >= delta = " + std::to_string(p.delta);
    return c;
  }

  const auto theta = angular_energy_profile(f);
  c.min_margin = std::numeric_limits<double>::infinity();
  c.c_fit = 0.0;
  std::vector<double> fit_x, fit_y;
  for (int i = 0; i < g.n_s(); ++i) {
    const double r = std::abs(g.s(i) - mid);
    if (!(r < L - 1.0)) continue;
    double conv = 0.0;
    for (int k = 0; k < g.n_s(); ++k) {
      if (tprof[k] != 0.0) conv += std::exp(-std::abs(g.s(i) - g.s(k))) * tprof[k] * g.cell_weight(k);
    }
    const double bound = c.c_constructive * std::exp(r - L) + conv;
    c.slices.push_back({g.s(i), theta[i], tprof[i], bound, bound - theta[i]});
    c.min_margin = std::min(c.min_margin, bound - theta[i]);
    c.c_fit = std::max(c.c_fit, (theta[i] - conv) * std::exp(L - r));
    if (theta[i] > 0.0) {
      fit_x.push_back(r);
      fit_y.push_back(std::log(theta[i]));
    }
  }
  if (c.slices.empty()) throw DomainError("cylinder too short for interior slices");
  c.slice_bound = c.min_margin >= 0.0;

  if (fit_x.size() >= 2) {
    const double n = static_cast<double>(fit_x.size());
    const double sx = std::accumulate(fit_x.begin(), fit_x.end(), 0.0);
    const double sy = std::accumulate(fit_y.begin(), fit_y.end(), 0.0);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < fit_x.size(); ++k) {
      sxx += fit_x[k] * fit_x[k];
      sxy += fit_x[k] * fit_y[k];
    }
    c.decay_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  } else {
    c.decay_exponent = std::numeric_limits<double>::quiet_NaN();
  }

  const double reach = std::max(0.0, L - p.lambda);
  const Interval inner{mid - reach, mid + reach};
  const auto q = hopf(f);
  double l1 = 0.0;
  for (int i = 0; i < g.n_s(); ++i) {
    const double w = g.cell_weight(i, inner);
    if (w == 0.0) continue;
    double row = 0.0;
    for (int j = 0; j < g.n_theta(); ++j) row += std::abs(q.at(i, j));
    l1 += 2.0 * row * w * g.h_theta();
  }
  c.hopf_l1 = l1;
  c.integrated_lhs = weighted_sum(g, theta, inner);
  c.integrated_rhs = c.c_fit * std::exp(-p.lambda) + 2.0 * c.tension_norm2;
  c.integrated_bound = c.integrated_lhs <= c.integrated_rhs;
  c.energy_lhs = weighted_sum(g, rows, inner);
  c.energy_rhs = c.integrated_rhs + 0.25 * l1;
  c.energy_bound = c.energy_lhs <= c.energy_rhs;

  c.verdict = (c.slice_bound && c.integrated_bound && c.energy_bound) ? Verdict::pass : Verdict::fail;
  if (c.verdict == Verdict::fail) {
    c.reason = !c.slice_bound ? "slice bound violated" : (!c.integrated_bound ? "integrated bound violated"
                                                                               : "energy bound violated");
  }
  return c;
}

EnergyLossLedger energy_loss_ledger(const MapField& f, const BranchDecomposition& d, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
  const auto& g = f.grid();
  const auto rows = row_energy(f);
  const auto osc = oscillation_profile(f);
  const auto q = hopf(f);
  EnergyLossLedger out{lambda, {}, std::nullopt};
  const std::size_t count = d.centers.size() - 1;
  for (std::size_t m = 1; m <= count; ++m) {
    LedgerEntry e;
    e.lo = d.centers[m - 1];
    e.hi = d.centers[m];
    const double lo = e.lo + lambda, hi = e.hi - lambda;
    if (!(hi > lo)) {
      e.skipped = true;
      out.entries.push_back(e);
      continue;
    }
    e.energy = weighted_sum(g, rows, {lo, hi});
    e.hopf_lo = m == 1 ? lo : e.lo;
    e.hopf_hi = m == count ? hi : e.hi;
    e.half_hopf_real = 0.5 * hopf_real_integral(q, {e.hopf_lo, e.hopf_hi});
    e.difference = e.energy - e.half_hopf_real;
    for (int i = 0; i < g.n_s(); ++i) {
      if (rows_in(g, i, lo, hi)) e.max_oscillation = std::max(e.max_oscillation, osc[i]);
    }
    out.entries.push_back(e);
  }
  if (g.is_periodic()) out.mean_hopf_defect = mean_hopf_defect(q, moduli_of(g));
  return out;
}

ConcentrationReport detect_concentration(const MapField& f, const BranchDecomposition& d) {
  const auto& g = f.grid();
  const auto dens = energy_density(f);
  ConcentrationReport out;
  const double period = 2.0 * std::numbers::pi;
  for (std::size_t m = 1; m + 1 < d.centers.size(); ++m) {
    const double c = d.centers[m];
    const Interval win{c - 1.5, c + 1.5};
    struct Node {
      double s, theta, mass;
    };
    std::vector<Node> nodes;
    double total = 0.0;
    int peak = -1;
    double peak_density = -1.0;
    for (int i = 0; i < g.n_s(); ++i) {
      const double w = g.cell_weight(i, win);
      if (w == 0.0) continue;
      for (int j = 0; j < g.n_theta(); ++j) {
        const double e = dens[static_cast<std::size_t>(i) * g.n_theta() + j];
        nodes.push_back({g.s(i), g.theta(i, j), e * w * g.h_theta()});
        total += nodes.back().mass;
        if (e > peak_density) {
          peak_density = e;
          peak = static_cast<int>(nodes.size()) - 1;
        }
      }
    }
    if (peak < 0) continue;
    const Node p = nodes[peak];
    std::vector<std::pair<double, double>> by_dist;
    by_dist.reserve(nodes.size());
    for (const auto& n : nodes) {
      double dt = std::fmod(std::abs(n.theta - p.theta), period);
      dt = std::min(dt, period - dt);
      by_dist.emplace_back(std::hypot(n.s - p.s, dt), n.mass);
    }
    std::sort(by_dist.begin(), by_dist.end());
    double acc = 0.0, radius = 0.0;
    for (const auto& [r, mass] : by_dist) {
      acc += mass;
      radius = r;
      if (acc >= 0.5 * total) break;
    }
    out.records.push_back({c, total, radius, p.s, std::fmod(p.theta, period)});
  }
  return out;
}

CollarAnalysis collar_pipeline(const MapField& f, double ell, const AnalysisParams& p) {
  const ConformalMetric collar = ConformalMetric::collar(ell);
  const auto& g = f.grid();
  const double x = 0.5 * g.length();
  if (std::abs(g.s_min() + x) > 1e-9 * x || g.is_periodic()) {
    throw DomainError("collar field must live on a finite cylinder C(-X, X)");
  }
  CollarAnalysis out{ell, decompose(f, p.delta, p.gap), {}, {}, 0, 0, false, 0, 0};
  out.decay = certify_decay(f, energy(f), p);
  out.ledger = energy_loss_ledger(f, out.decomposition, p.lambda);
  const auto tau = tension(f);
  out.flat_tension_norm = tension_norm(tau, g, ConformalMetric::flat());
  out.collar_tension_norm = tension_norm(tau, g, collar);
  out.tension_inequality = out.flat_tension_norm <= out.collar_tension_norm * (1.0 + 1e-12);
  const auto q = hopf(f);
  out.hopf_l1_flat = hopf_norms(q, ConformalMetric::flat()).l1;
  out.hopf_l1_collar = hopf_norms(q, collar).l1;
  return out;
}

}  // namespace teichflow
