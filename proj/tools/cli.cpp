#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "teichflow/analyzer.hpp"
#include "teichflow/errors.hpp"
#include "teichflow/flow.hpp"
#include "teichflow/hyperbolic.hpp"
#include "teichflow/initial_data.hpp"
#include "teichflow/report.hpp"
#include "teichflow/run_config.hpp"
#include "teichflow/snapshot.hpp"

namespace teichflow::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ensure_dir(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ConfigError("cannot create output directory " + out.string());
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p);
  if (!os) throw ConfigError("cannot write " + p.string());
  os << text;
}

struct Setup {
  FlowState state;
  std::string initial;
};

Setup build_state(const RunConfig& c) {
  const auto target = TargetManifold::parse(c.get("target"));
  const auto kind = parse_boundary_kind(c.get("grid.boundary_kind"));
  const auto scheme = parse_theta_scheme(c.get("grid.theta_scheme"));
  const int n_s = static_cast<int>(c.get_int("grid.n_s"));
  const int n_theta = static_cast<int>(c.get_int("grid.n_theta"));
  const bool torus = kind != BoundaryKind::finite;
  CylinderGrid grid = torus ? CylinderGrid::torus(c.get_double("moduli.a"), c.get_double("moduli.b"), n_s, n_theta)
                            : CylinderGrid::finite(c.get_double("grid.s_min"), c.get_double("grid.s_max"), n_s, n_theta);
  grid = grid.with_theta_scheme(scheme);
  const std::string initial = c.get("initial");
  const int winding = static_cast<int>(c.get_int("initial.winding"));
  auto need_circle = [&] {
    if (target.kind() != TargetKind::circle) throw ConfigError("initial '" + initial + "' needs target = circle");
  };
  std::optional<MapField> u;
  if (initial == "s_winding") {
    need_circle();
    u = s_winding(grid, winding);
  } else if (initial == "theta_winding") {
    need_circle();
    u = theta_winding(grid, winding);
  } else if (initial == "constant") {
    std::vector<double> p(target.ambient_dim(), 0.0);
    p[0] = 1.0;
    u = MapField::constant(grid, target, p);
  } else if (initial == "random") {
    if (target.kind() != TargetKind::sphere) throw ConfigError("initial 'random' needs a sphere target");
    RandomFieldOptions opt;
    opt.sphere_dim = target.ambient_dim() - 1;
    opt.amplitude = c.get_double("initial.amplitude");
    u = random_sphere_field(grid, c.get_u64("seed"), opt);
  } else if (initial == "boundary_driven") {
    if (target != TargetManifold::sphere(2) || torus) {
      throw ConfigError("initial 'boundary_driven' needs target = sphere2 on a finite grid");
    }
    u = boundary_driven_guess(grid, c.get_double("initial.amplitude"));
  } else {
    throw ConfigError("unknown initial data '" + initial + "'");
  }
  const double eta = c.get_double("eta");
  if (torus) return {FlowState::torus(*u, {grid.twist(), grid.length()}, eta), initial};
  return {FlowState::fixed(*u), initial};
}

struct Simulation {
  RunResult result;
  std::vector<FlowState> snapshots;
  AlmostMinimalExtraction extraction;
};

Simulation simulate_impl(const RunConfig& c, const fs::path& out, std::ostream& log, bool keep_snapshots) {
  auto setup = build_state(c);
  ensure_dir(out);
  const fs::path ledger_path = out / c.get("output.ledger");
  std::ofstream ledger(ledger_path);
  if (!ledger) throw ConfigError("cannot write " + ledger_path.string());
  ledger << c.header() << ledger_csv_header() << '\n';

  RunOptions opt;
  opt.t_end = c.get_double("t_end");
  opt.dt = c.get_double("dt");
  opt.adaptive = c.get_bool("adaptive");
  opt.c_cfl = c.get_double("cfl");
  opt.snapshot_every = static_cast<int>(c.get_int("output.snapshot_every"));
  opt.on_record = [&](const LedgerRecord& r) { ledger << ledger_csv_row(r) << '\n'; };
  Simulation sim{{setup.state, {}, {}}, {}, {}};
  int snap = 0;
  const std::string prefix = c.get("output.snapshot_prefix");
  const std::string hash = c.hash();
  opt.on_snapshot = [&](const FlowState& s, const FlowDrive&) {
    std::map<std::string, std::string> meta{{"t", fmt(s.t)}, {"eta", fmt(s.eta)}, {"config_hash", hash}};
    char name[64];
    std::snprintf(name, sizeof name, "%s_%04d.txt", prefix.c_str(), snap++);
    write_snapshot(out / name, s.u, meta);
    if (keep_snapshots) sim.snapshots.push_back(s);
  };
  sim.result = run(setup.state, opt);
  const auto& fs_final = sim.result.final_state;
  write_snapshot(out / (prefix + "_final.txt"), fs_final.u,
                 {{"t", fmt(fs_final.t)}, {"eta", fmt(fs_final.eta)}, {"config_hash", hash}});

  sim.extraction = extract_almost_minimal(sim.result.samples, c.get_double("thresholds.tension"),
                                          c.get_double("thresholds.proj"));
  std::ostringstream am;
  am << c.header() << "t,tension_norm,proj_norm,E,ell\n";
  for (const auto& x : sim.extraction.selected) {
    am << fmt(x.t) << ',' << fmt(x.tension_norm) << ',' << fmt(x.proj_norm) << ',' << fmt(x.energy) << ','
       << fmt(x.ell) << '\n';
  }
  write_file(out / "almost_minimal.csv", am.str());

  const auto& first = sim.result.ledger.front();
  const auto& last = sim.result.ledger.back();
  log << "config_hash " << hash << '\n';
  log << "steps " << last.step << " t " << fmt(last.t) << '\n';
  log << "E " << fmt(first.energy) << " -> " << fmt(last.energy) << '\n';
  if (fs_final.moduli) log << "b " << fmt(first.b) << " -> " << fmt(last.b) << " ell " << fmt(last.ell) << '\n';
  log << "almost_minimal " << sim.extraction.selected.size() << " selected of " << sim.extraction.qualifying.size()
      << " qualifying\n";
  return sim;
}

template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const StepRejected& e) {
    log << "numerical failure: " << e.what() << " (admissible dt " << e.admissible_dt() << ")\n";
    return kNumericalFailure;
  } catch (const NumericalFailure& e) {
    log << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const DomainError& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return kPass;
    case Verdict::declined:
      return kDeclined;
    case Verdict::fail:
      return kFail;
  }
  return kFail;
}

Snapshot load_snapshot(const fs::path& p) {
  try {
    return read_snapshot(p);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

RunConfig params_config(const std::map<std::string, std::string>& kv) { return RunConfig::defaults(kv); }

void write_report(const fs::path& out, const std::string& stem, const AnalysisReport& r, std::ostream& log) {
  ensure_dir(out);
  const auto text = format_text(r);
  write_file(out / (stem + ".txt"), text);
  write_file(out / (stem + ".json"), format_json(r));
  log << text;
}

}  // namespace

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(' ');
    const auto e = tok.find_last_not_of(' ');
    if (b == std::string::npos) throw ConfigError("empty entry in list '" + csv + "'");
    tok = tok.substr(b, e - b + 1);
    double x = 0.0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) throw ConfigError("bad number '" + tok + "'");
    out.push_back(x);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

int simulate(const fs::path& config, const fs::path& out, std::ostream& log) {
  return guarded(log, [&] {
    const auto c = RunConfig::load(config, simulate_schema());
    simulate_impl(c, out, log, false);
    return static_cast<int>(kPass);
  });
}

int analyze(const AnalyzeArgs& a, const fs::path& out, std::ostream& log) {
  return guarded(log, [&] {
    const auto snap = load_snapshot(a.snapshot);
    std::map<std::string, std::string> kv{{"snapshot", a.snapshot.string()},
                                          {"delta", fmt(a.delta)},
                                          {"gap", fmt(a.gap)},
                                          {"lambda", fmt(a.lambda)}};
    if (a.e0) kv["e0"] = fmt(*a.e0);
    const auto cfg = params_config(kv);
    AnalysisReport r;
    r.header = {{"command", "analyze"}, {"config_hash", cfg.hash()}};
    for (const auto& [k, v] : kv) r.header.emplace_back(k, v);
    const auto& f = snap.field;
    r.decomposition = decompose(f, a.delta, a.gap);
    r.ledger = energy_loss_ledger(f, *r.decomposition, a.lambda);
    r.concentration = detect_concentration(f, *r.decomposition);
    int code = kPass;
    if (a.e0) {
      r.decay = certify_decay(f, *a.e0, {a.delta, a.gap, a.lambda});
      code = verdict_code(r.decay->verdict);
    }
    write_report(out, "analysis", r, log);
    return code;
  });
}

int certify(const fs::path& snapshot, double e0, double delta, double lambda, const fs::path& out, std::ostream& log) {
  return guarded(log, [&] {
    const auto snap = load_snapshot(snapshot);
    std::map<std::string, std::string> kv{
        {"snapshot", snapshot.string()}, {"e0", fmt(e0)}, {"delta", fmt(delta)}, {"lambda", fmt(lambda)}};
    const auto cfg = params_config(kv);
    AnalysisReport r;
    r.header = {{"command", "certify"}, {"config_hash", cfg.hash()}};
    for (const auto& [k, v] : kv) r.header.emplace_back(k, v);
    AnalysisParams p;
    p.delta = delta;
    p.lambda = lambda;
    r.decay = certify_decay(snap.field, e0, p);
    write_report(out, "certificate", r, log);
    return verdict_code(r.decay->verdict);
  });
}

int collar_scalings(const std::string& curve, const std::vector<double>& lengths, const fs::path& out,
                    std::ostream& log) {
  return guarded(log, [&] {
    std::optional<UnitSpeedCurve> alpha;
    if (curve == "segment") {
      alpha = UnitSpeedCurve::segment(1.0);
    } else if (curve == "arc") {
      alpha = UnitSpeedCurve::planar_arc(1.0);
    } else {
      throw ConfigError("curve must be 'segment' or 'arc'");
    }
    const auto report = verify_collapse_scalings(*alpha, lengths);
    std::string lens;
    for (double x : lengths) lens += (lens.empty() ? "" : ",") + fmt(x);
    const auto cfg = params_config({{"curve", curve}, {"lengths", lens}});
    const auto text = cfg.header() + format_scaling_report(report);
    ensure_dir(out);
    write_file(out / ("collar_scalings_" + curve + ".txt"), text);
    log << text;
    return static_cast<int>(kPass);
  });
}

int neck_demo(const fs::path& config, const fs::path& out, std::ostream& log) {
  return guarded(log, [&] {
    const auto c = config.empty() ? RunConfig::defaults(neck_demo_schema()) : RunConfig::load(config, neck_demo_schema());
    if (TargetManifold::parse(c.get("target")).kind() != TargetKind::circle) {
      throw ConfigError("neck-demo needs target = circle");
    }
    const auto sim = simulate_impl(c, out, log, true);
    const auto& ledger = sim.result.ledger;
    const auto& fin = sim.result.final_state;

    std::ostringstream os;
    os << c.header() << "[neck-demo]\n";
    if (!fin.moduli) throw ConfigError("neck-demo needs a periodic (torus) grid");
    if (c.get("initial") == "constant" || ledger.front().energy == 0.0) {
      os << "status = degenerate\nreason = constant initial data; the flow is stationary\n";
      os << "energy = " << fmt(ledger.back().energy) << '\n';
      write_file(out / "neck_report.txt", os.str());
      log << os.str();
      return static_cast<int>(kPass);
    }

    bool ell_decreasing = true, energy_nonincreasing = true;
    double worst_eb = 0.0;
    const double target_eb = 4.0 * std::pow(std::numbers::pi, 3);
    for (std::size_t k = 1; k < ledger.size(); ++k) {
      if (!(ledger[k].ell < ledger[k - 1].ell)) ell_decreasing = false;
      if (ledger[k].energy > ledger[k - 1].energy * (1.0 + 1e-12)) energy_nonincreasing = false;
    }
    for (const auto& r : ledger) worst_eb = std::max(worst_eb, std::abs(r.energy * r.b / target_eb - 1.0));

    // Analyze the last selected almost-minimal snapshot, or the final state.
    const FlowState* chosen = &fin;
    bool from_extraction = false;
    if (!sim.extraction.selected.empty()) {
      const double t = sim.extraction.selected.back().t;
      for (const auto& s : sim.snapshots) {
        if (s.t == t) {
          chosen = &s;
          from_extraction = true;
        }
      }
    }
    const auto d = decompose(chosen->u, c.get_double("analysis.delta"), c.get_double("analysis.gap"));
    const auto osc = oscillation_profile(chosen->u);
    const double osc_max = *std::max_element(osc.begin(), osc.end());
    const bool osc_ok = osc_max < 0.05;
    const bool centers_ok = d.interior_count() == 0;
    const bool energy_trend = ledger.back().energy < ledger.front().energy;
    const bool winding = c.get("initial") == "s_winding";
    const bool eb_ok = !winding || worst_eb < 0.01;

    os << "analyzed_t = " << fmt(chosen->t) << (from_extraction ? " (almost-minimal)" : " (final state)") << '\n';
    if (chosen->moduli) {
      os << "b = " << fmt(chosen->moduli->b) << "\nell = " << fmt(chosen->moduli->ell()) << '\n';
    }
    os << "ell_decreasing = " << (ell_decreasing ? "pass" : "fail") << '\n';
    os << "energy_nonincreasing = " << (energy_nonincreasing ? "pass" : "fail") << '\n';
    os << "energy_decreasing_trend = " << (energy_trend ? "pass" : "fail") << ' ' << fmt(ledger.front().energy)
       << " -> " << fmt(ledger.back().energy) << '\n';
    if (winding) os << "E_times_b_max_rel_dev = " << fmt(worst_eb) << (eb_ok ? " pass" : " fail") << '\n';
    os << "max_slice_oscillation = " << fmt(osc_max) << (osc_ok ? " pass" : " fail") << '\n';
    os << "interior_centers = " << d.interior_count() << (centers_ok ? " pass" : " fail") << '\n';
    const bool ok = ell_decreasing && energy_nonincreasing && energy_trend && eb_ok && osc_ok && centers_ok;
    os << "status = " << (ok ? "pass" : "fail") << '\n';

    AnalysisReport r;
    r.header = {{"command", "neck-demo"}, {"config_hash", c.hash()}};
    r.decomposition = d;
    r.ledger = energy_loss_ledger(chosen->u, d, c.get_double("analysis.lambda"));
    write_file(out / "neck_report.txt", os.str() + format_text(r));
    write_file(out / "neck_report.json", format_json(r));
    log << os.str();
    return static_cast<int>(ok ? kPass : kFail);
  });
}

}  // namespace teichflow::cli
