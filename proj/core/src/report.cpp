#include "teichflow/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace teichflow {

namespace {

using nlohmann::json;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

json jnum(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string format_text(const AnalysisReport& r) {
  std::ostringstream os;
  for (const auto& [k, v] : r.header) os << "# " << k << " = " << v << '\n';
  if (r.decomposition) {
    const auto& d = *r.decomposition;
    os << "[decomposition]\n";
    os << "delta = " << num(d.delta) << "\ngap = " << num(d.gap) << '\n';
    os << "range = " << num(d.s_min) << " " << num(d.s_max) << '\n';
    os << "interior_centers = " << d.interior_count() << '\n';
    os << "centers =";
    for (double c : d.centers) os << ' ' << num(c);
    os << "\nheavy_chunks = " << d.heavy_chunks.size() << '\n';
    os << "# lo hi energy max_osc max_theta half_hopf_real\n";
    for (const auto& s : d.intervals) {
      os << num(s.lo) << ' ' << num(s.hi) << ' ' << num(s.energy) << ' ' << num(s.max_oscillation) << ' '
         << num(s.max_angular_energy) << ' ' << num(s.half_hopf_real) << '\n';
    }
  }
  if (r.decay) {
    const auto& c = *r.decay;
    os << "[decay]\n";
    os << "verdict = " << to_string(c.verdict) << '\n';
    if (!c.reason.empty()) os << "reason = " << c.reason << '\n';
    if (c.offending_chunk) os << "offending_chunk = " << *c.offending_chunk << '\n';
    if (c.verdict != Verdict::declined) {
      os << "E0 = " << num(c.e0) << "\nC = " << num(c.c_constructive) << "\nC_fit = " << num(c.c_fit) << '\n';
      os << "half_length = " << num(c.half_length) << "\nlambda = " << num(c.lambda) << '\n';
      os << "tension_norm2 = " << num(c.tension_norm2) << "\nhopf_L1 = " << num(c.hopf_l1) << '\n';
      os << "decay_exponent = " << num(c.decay_exponent) << '\n';
      os << "slice_bound = " << (c.slice_bound ? "pass" : "fail") << " min_margin " << num(c.min_margin) << '\n';
      os << "integrated_bound = " << (c.integrated_bound ? "pass" : "fail") << ' ' << num(c.integrated_lhs)
         << " <= " << num(c.integrated_rhs) << '\n';
      os << "energy_bound = " << (c.energy_bound ? "pass" : "fail") << ' ' << num(c.energy_lhs) << " <= "
         << num(c.energy_rhs) << '\n';
      os << "# s theta T bound margin\n";
      for (const auto& s : c.slices) {
        os << num(s.s) << ' ' << num(s.angular_energy) << ' ' << num(s.tension_integrand) << ' ' << num(s.bound)
           << ' ' << num(s.margin) << '\n';
      }
    }
  }
  if (r.ledger) {
    const auto& l = *r.ledger;
    os << "[ledger]\n";
    os << "lambda = " << num(l.lambda) << '\n';
    if (l.mean_hopf_defect) os << "mean_hopf_defect = " << num(*l.mean_hopf_defect) << '\n';
    os << "# lo hi energy half_hopf_real difference max_osc\n";
    for (const auto& e : l.entries) {
      if (e.skipped) {
        os << num(e.lo) << ' ' << num(e.hi) << " skipped\n";
        continue;
      }
      os << num(e.lo) << ' ' << num(e.hi) << ' ' << num(e.energy) << ' ' << num(e.half_hopf_real) << ' '
         << num(e.difference) << ' ' << num(e.max_oscillation) << '\n';
    }
  }
  if (r.concentration) {
    os << "[concentration]\n";
    os << "records = " << r.concentration->records.size() << '\n';
    os << "# center local_energy scale peak_s peak_theta\n";
    for (const auto& c : r.concentration->records) {
      os << num(c.center) << ' ' << num(c.local_energy) << ' ' << num(c.scale) << ' ' << num(c.peak_s) << ' '
         << num(c.peak_theta) << '\n';
    }
  }
  return os.str();
}

std::string format_json(const AnalysisReport& r) {
  std::ostringstream os;
  json head = {{"section", "header"}};
  for (const auto& [k, v] : r.header) head[k] = v;
  os << head.dump() << '\n';
  if (r.decomposition) {
    const auto& d = *r.decomposition;
    json j = {{"section", "decomposition"}, {"delta", d.delta},     {"gap", d.gap},
              {"s_min", d.s_min},           {"s_max", d.s_max},     {"centers", d.centers},
              {"interior_centers", d.interior_count()}};
    json chunks = json::array();
    for (const auto& c : d.heavy_chunks) chunks.push_back({{"k", c.k}, {"energy", c.energy}});
    j["heavy_chunks"] = chunks;
    json iv = json::array();
    for (const auto& s : d.intervals) {
      iv.push_back({{"lo", s.lo},
                    {"hi", s.hi},
                    {"energy", s.energy},
                    {"max_oscillation", s.max_oscillation},
                    {"max_angular_energy", s.max_angular_energy},
                    {"half_hopf_real", s.half_hopf_real}});
    }
    j["intervals"] = iv;
    os << j.dump() << '\n';
  }
  if (r.decay) {
    const auto& c = *r.decay;
    json j = {{"section", "decay"}, {"verdict", to_string(c.verdict)}, {"reason", c.reason}};
    j["offending_chunk"] = c.offending_chunk ? json(*c.offending_chunk) : json(nullptr);
    if (c.verdict != Verdict::declined) {
      j["E0"] = c.e0;
      j["C"] = c.c_constructive;
      j["C_fit"] = jnum(c.c_fit);
      j["half_length"] = c.half_length;
      j["lambda"] = c.lambda;
      j["tension_norm2"] = c.tension_norm2;
      j["hopf_L1"] = c.hopf_l1;
      j["decay_exponent"] = jnum(c.decay_exponent);
      j["min_margin"] = jnum(c.min_margin);
      j["slice_bound"] = c.slice_bound;
      j["integrated_bound"] = {{"pass", c.integrated_bound}, {"lhs", c.integrated_lhs}, {"rhs", c.integrated_rhs}};
      j["energy_bound"] = {{"pass", c.energy_bound}, {"lhs", c.energy_lhs}, {"rhs", c.energy_rhs}};
      json sl = json::array();
      for (const auto& s : c.slices) {
        sl.push_back({s.s, s.angular_energy, s.tension_integrand, s.bound, s.margin});
      }
      j["slices"] = {{"columns", {"s", "theta", "T", "bound", "margin"}}, {"rows", sl}};
    }
    os << j.dump() << '\n';
  }
  if (r.ledger) {
    const auto& l = *r.ledger;
    json j = {{"section", "ledger"}, {"lambda", l.lambda}};
    j["mean_hopf_defect"] = l.mean_hopf_defect ? json(*l.mean_hopf_defect) : json(nullptr);
    json en = json::array();
    for (const auto& e : l.entries) {
      en.push_back({{"lo", e.lo},
                    {"hi", e.hi},
                    {"skipped", e.skipped},
                    {"energy", e.energy},
                    {"half_hopf_real", e.half_hopf_real},
                    {"difference", e.difference},
                    {"max_oscillation", e.max_oscillation}});
    }
    j["entries"] = en;
    os << j.dump() << '\n';
  }
  if (r.concentration) {
    json rec = json::array();
    for (const auto& c : r.concentration->records) {
      rec.push_back({{"center", c.center},
                     {"local_energy", c.local_energy},
                     {"scale", c.scale},
                     {"peak_s", c.peak_s},
                     {"peak_theta", c.peak_theta}});
    }
    os << json{{"section", "concentration"}, {"records", rec}}.dump() << '\n';
  }
  return os.str();
}

}  // namespace teichflow
