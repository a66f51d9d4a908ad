#include "teichflow/snapshot.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "teichflow/errors.hpp"

namespace teichflow {

namespace {

constexpr const char* kMagic = "teichflow-snapshot 1";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw DomainError("snapshot: bad number for " + key);
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw DomainError("snapshot: bad integer for " + key);
  return x;
}

}  // namespace

void write_snapshot(std::ostream& os, const MapField& f, const std::map<std::string, std::string>& meta) {
  const auto& g = f.grid();
  os << kMagic << '\n' << std::setprecision(17);
  os << "grid.s_min = " << g.s_min() << '\n';
  os << "grid.s_max = " << g.s_max() << '\n';
  os << "grid.n_s = " << g.n_s() << '\n';
  os << "grid.n_theta = " << g.n_theta() << '\n';
  os << "grid.boundary_kind = " << to_string(g.boundary()) << '\n';
  os << "grid.twist = " << g.twist() << '\n';
  os << "grid.theta_scheme = " << to_string(g.theta_scheme()) << '\n';
  os << "target = " << f.target().name() << '\n';
  for (const auto& [k, v] : meta) os << "meta." << k << " = " << v << '\n';
  os << "values\n";
  const int dim = f.dim();
  for (int i = 0; i < g.n_s(); ++i) {
    for (int j = 0; j < g.n_theta(); ++j) {
      const auto p = f.at(i, j);
      for (int c = 0; c < dim; ++c) os << (c ? " " : "") << p[c];
      os << '\n';
    }
  }
  os << "end\n";
}

void write_snapshot(const std::filesystem::path& path, const MapField& f,
                    const std::map<std::string, std::string>& meta) {
  std::ofstream os(path);
  if (!os) throw DomainError("cannot write snapshot " + path.string());
  write_snapshot(os, f, meta);
}

Snapshot read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != kMagic) throw DomainError("snapshot: missing header");
  std::map<std::string, std::string> kv, meta;
  bool saw_values = false;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line == "values") {
      saw_values = true;
      break;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("snapshot: expected key = value, got '" + line + "'");
    const auto key = trim(line.substr(0, eq));
    const auto val = trim(line.substr(eq + 1));
    if (key.rfind("meta.", 0) == 0) {
      meta[key.substr(5)] = val;
    } else {
      kv[key] = val;
    }
  }
  if (!saw_values) throw DomainError("snapshot: missing values block");
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw DomainError("snapshot: missing key " + k);
    return it->second;
  };
  const ThetaScheme scheme =
      kv.count("grid.theta_scheme") ? parse_theta_scheme(kv["grid.theta_scheme"]) : ThetaScheme::finite_difference;
  const CylinderGrid grid(to_double("grid.s_min", need("grid.s_min")), to_double("grid.s_max", need("grid.s_max")),
                          to_int("grid.n_s", need("grid.n_s")), to_int("grid.n_theta", need("grid.n_theta")),
                          parse_boundary_kind(need("grid.boundary_kind")),
                          to_double("grid.twist", need("grid.twist")), scheme);
  const TargetManifold target = TargetManifold::parse(need("target"));
  const std::size_t count = static_cast<std::size_t>(grid.n_s()) * grid.n_theta() * target.ambient_dim();
  std::vector<double> values;
  values.reserve(count);
  bool saw_end = false;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line == "end") {
      saw_end = true;
      break;
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) values.push_back(to_double("values", tok));
  }
  if (!saw_end) throw DomainError("snapshot: missing end marker");
  if (values.size() != count) throw DomainError("snapshot: wrong number of values");
  return {MapField(grid, target, std::move(values)), std::move(meta)};
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot read snapshot " + path.string());
  return read_snapshot(is);
}

}  // namespace teichflow
