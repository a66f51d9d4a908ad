#include "teichflow/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace teichflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunConfig RunConfig::defaults(const Schema& schema) {
  RunConfig c;
  c.values_ = schema;
  return c;
}

RunConfig RunConfig::parse(std::istream& is, const Schema& schema) {
  RunConfig c = defaults(schema);
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(n) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto val = trim(line.substr(eq + 1));
    if (!schema.count(key)) throw ConfigError("line " + std::to_string(n) + ": unknown key '" + key + "'");
    c.values_[key] = val;
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path, const Schema& schema) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path.string());
  return parse(is, schema);
}

const std::string& RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing key '" + key + "'");
  return it->second;
}

double RunConfig::get_double(const std::string& key) const {
  const auto& v = get(key);
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError("key '" + key + "': not a number");
  return x;
}

long long RunConfig::get_int(const std::string& key) const {
  const auto& v = get(key);
  long long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError("key '" + key + "': not an integer");
  return x;
}

std::uint64_t RunConfig::get_u64(const std::string& key) const {
  const auto& v = get(key);
  std::uint64_t x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError("key '" + key + "': not an integer");
  return x;
}

bool RunConfig::get_bool(const std::string& key) const {
  const auto& v = get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': not a boolean");
}

void RunConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::string RunConfig::canonical() const {
  std::ostringstream os;
  for (const auto& [k, v] : values_) os << k << " = " << v << '\n';
  return os.str();
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical())));
  return buf;
}

std::string RunConfig::header() const {
  std::ostringstream os;
  os << "# config_hash = " << hash() << '\n';
  std::istringstream is(canonical());
  std::string line;
  while (std::getline(is, line)) os << "# " << line << '\n';
  return os.str();
}

RunConfig::Schema simulate_schema() {
  return {
      {"target", "circle"},
      {"initial", "s_winding"},
      {"initial.winding", "1"},
      {"initial.amplitude", "0.6"},
      {"grid.boundary_kind", "periodic"},
      {"grid.s_min", "0"},
      {"grid.s_max", "6.283185307179586"},
      {"grid.n_s", "64"},
      {"grid.n_theta", "8"},
      {"grid.theta_scheme", "finite_difference"},
      {"moduli.a", "0"},
      {"moduli.b", "6.283185307179586"},
      {"eta", "1"},
      {"dt", "0"},
      {"adaptive", "true"},
      {"cfl", "0.2"},
      {"t_end", "0.1"},
      {"thresholds.tension", "1e-3"},
      {"thresholds.proj", "1e-3"},
      {"seed", "1"},
      {"output.ledger", "ledger.csv"},
      {"output.snapshot_every", "0"},
      {"output.snapshot_prefix", "snapshot"},
  };
}

RunConfig::Schema neck_demo_schema() {
  auto s = simulate_schema();
  s["t_end"] = "1.6";
  s["output.snapshot_every"] = "500";
  s["thresholds.tension"] = "1e-6";
  s["thresholds.proj"] = "5";
  s["analysis.delta"] = "0.1";
  s["analysis.gap"] = "10";
  s["analysis.lambda"] = "2";
  return s;
}

}  // namespace teichflow
