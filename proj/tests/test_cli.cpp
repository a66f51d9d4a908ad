#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "teichflow/initial_data.hpp"
#include "teichflow/run_config.hpp"
#include "teichflow/snapshot.hpp"

using namespace teichflow;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("teichflow_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallRun =
    "# small coupled run\n"
    "target = sphere2\n"
    "initial = random\n"
    "grid.n_s = 16\n"
    "grid.n_theta = 16\n"
    "moduli.a = 0.5\n"
    "moduli.b = 7\n"
    "t_end = 0.01\n"
    "output.snapshot_every = 25\n"
    "seed = 4\n";
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config parsing") {
    std::istringstream good("t_end = 2.5\n\n# comment\nadaptive = false\n");
    const auto c = RunConfig::parse(good, simulate_schema());
    CHECK(c.get_double("t_end") == 2.5);
    CHECK_FALSE(c.get_bool("adaptive"));
    CHECK(c.get("target") == "circle");
    CHECK(c.get_int("grid.n_s") == 64);

    std::istringstream unknown("nonsense = 1\n");
    CHECK_THROWS_AS(RunConfig::parse(unknown, simulate_schema()), ConfigError);
    std::istringstream malformed("t_end 2\n");
    CHECK_THROWS_AS(RunConfig::parse(malformed, simulate_schema()), ConfigError);
    std::istringstream bad_number("t_end = fast\n");
    CHECK_THROWS_AS(RunConfig::parse(bad_number, simulate_schema()).get_double("t_end"), ConfigError);
    CHECK_THROWS_AS(RunConfig::load("/nonexistent/run.cfg", simulate_schema()), ConfigError);
  }

  TEST_CASE("config hash is canonical") {
    std::istringstream a("t_end = 1\nseed = 3\n"), b("seed = 3\n# reordered\nt_end = 1\n");
    const auto ca = RunConfig::parse(a, simulate_schema()), cb = RunConfig::parse(b, simulate_schema());
    CHECK(ca.hash() == cb.hash());
    CHECK(ca.hash().size() == 16);
    CHECK(ca.hash() != RunConfig::defaults(simulate_schema()).hash());
    CHECK(ca.header().rfind("# config_hash = " + ca.hash(), 0) == 0);
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  }

  TEST_CASE("list parsing") {
    CHECK(cli::parse_list("25, 50,100") == std::vector<double>{25, 50, 100});
    CHECK_THROWS_AS(cli::parse_list("25,,50"), ConfigError);
    CHECK_THROWS_AS(cli::parse_list("x"), ConfigError);
  }

  TEST_CASE("simulate is reproducible and writes its artifacts") {
    const auto dir = scratch("simulate");
    const auto cfg = write_text(dir / "run.cfg", kSmallRun);
    std::ostringstream log;
    REQUIRE(cli::simulate(cfg, dir / "a", log) == cli::kPass);
    REQUIRE(cli::simulate(cfg, dir / "b", log) == cli::kPass);
    const auto la = slurp(dir / "a" / "ledger.csv");
    CHECK(la == slurp(dir / "b" / "ledger.csv"));
    CHECK(la.rfind("# config_hash = ", 0) == 0);
    CHECK(la.find("\nstep,t,E,") != std::string::npos);
    CHECK(fs::exists(dir / "a" / "snapshot_final.txt"));
    CHECK(fs::exists(dir / "a" / "snapshot_0000.txt"));
    CHECK(fs::exists(dir / "a" / "almost_minimal.csv"));
    const auto snap = read_snapshot(dir / "a" / "snapshot_final.txt");
    CHECK(snap.field.target().name() == "sphere2");
  }

  TEST_CASE("configuration errors exit with 2") {
    const auto dir = scratch("bad");
    std::ostringstream log;
    CHECK(cli::simulate(write_text(dir / "u.cfg", "speed = 3\n"), dir, log) == cli::kConfigError);
    CHECK(cli::simulate(write_text(dir / "m.cfg", "t_end\n"), dir, log) == cli::kConfigError);
    CHECK(cli::simulate(dir / "missing.cfg", dir, log) == cli::kConfigError);
    CHECK(cli::simulate(write_text(dir / "t.cfg", "target = torus\n"), dir, log) == cli::kConfigError);
    CHECK(cli::certify(write_text(dir / "junk.txt", "hello\n"), 1.0, 0.1, 2.0, dir, log) == cli::kConfigError);
    CHECK(cli::collar_scalings("spiral", {25}, dir, log) == cli::kConfigError);
    CHECK(cli::collar_scalings("segment", {1.0}, dir, log) == cli::kConfigError);
  }

  TEST_CASE("an oversized fixed step is a numerical failure") {
    const auto dir = scratch("cfl");
    std::ostringstream log;
    const auto cfg = write_text(dir / "run.cfg", std::string(kSmallRun) + "dt = 0.5\nadaptive = false\n");
    CHECK(cli::simulate(cfg, dir, log) == cli::kNumericalFailure);
  }

  TEST_CASE("certify verdicts map to exit codes") {
    const auto dir = scratch("certify");
    std::ostringstream log;
    const auto g = CylinderGrid::finite(-10, 10, 161, 16);
    const double p[3] = {0.0, 0.0, 1.0};
    write_snapshot(dir / "flat.txt", MapField::constant(g, TargetManifold::sphere(2), p));
    write_snapshot(dir / "bump.txt", gaussian_bumps(g, {{0.0, 1.0}}));
    CHECK(cli::certify(dir / "flat.txt", 0.0, 0.1, 2.0, dir / "f", log) == cli::kPass);
    CHECK(fs::exists(dir / "f" / "certificate.txt"));
    CHECK(fs::exists(dir / "f" / "certificate.json"));
    CHECK(cli::certify(dir / "bump.txt", 1.0, 0.1, 2.0, dir / "b", log) == cli::kDeclined);

    cli::AnalyzeArgs a;
    a.snapshot = dir / "bump.txt";
    CHECK(cli::analyze(a, dir / "an", log) == cli::kPass);
    CHECK(slurp(dir / "an" / "analysis.txt").find("[decomposition]") != std::string::npos);
    a.e0 = 1.0;
    CHECK(cli::analyze(a, dir / "an2", log) == cli::kDeclined);
  }

  TEST_CASE("collar scalings write a report") {
    const auto dir = scratch("scalings");
    std::ostringstream log;
    CHECK(cli::collar_scalings("segment", {25, 50}, dir, log) == cli::kPass);
    const auto text = slurp(dir / "collar_scalings_segment.txt");
    CHECK(text.rfind("# config_hash = ", 0) == 0);
    CHECK(text.find("slope") != std::string::npos);
  }

  TEST_CASE("neck demo on constant data is degenerate") {
    const auto dir = scratch("neck");
    std::ostringstream log;
    const auto cfg = write_text(dir / "neck.cfg", "initial = constant\nt_end = 0.01\n");
    CHECK(cli::neck_demo(cfg, dir / "out", log) == cli::kPass);
    CHECK(slurp(dir / "out" / "neck_report.txt").find("degenerate") != std::string::npos);
    CHECK(cli::neck_demo(write_text(dir / "s.cfg", "target = sphere2\n"), dir / "o2", log) == cli::kConfigError);
  }
}
