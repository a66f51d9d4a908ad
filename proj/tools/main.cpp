#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "teichflow/parallel.hpp"
#include "teichflow/run_config.hpp"

int main(int argc, char** argv) {
  namespace tc = teichflow::cli;
  CLI::App app{"Teichmueller harmonic map flow simulator and certificate checker"};
  app.require_subcommand(1);
  std::string out = ".";
  int threads = 0;
  bool ci = false;
  app.add_option("--out", out, "Output directory");
  app.add_option("--threads", threads, "Worker threads (overrides TEICHFLOW_THREADS)");
  app.add_flag("--ci", ci, "Single-threaded deterministic mode");

  std::string config;
  auto* sim = app.add_subcommand("simulate", "Run the flow from a config file");
  sim->add_option("--config", config, "key = value config")->required();

  tc::AnalyzeArgs an;
  double e0 = -1.0;
  auto* analyze = app.add_subcommand("analyze", "Decompose a snapshot and write reports");
  analyze->add_option("--snapshot", an.snapshot)->required();
  analyze->add_option("--delta", an.delta)->required();
  analyze->add_option("--gap", an.gap)->required();
  analyze->add_option("--lambda", an.lambda)->required();
  analyze->add_option("--e0", e0, "Also certify decay with this energy bound");

  std::string cert_snapshot;
  double cert_e0 = 0.0, cert_delta = 0.1, cert_lambda = 2.0;
  auto* certify = app.add_subcommand("certify", "Angular-energy decay certificate for a snapshot");
  certify->add_option("--snapshot", cert_snapshot)->required();
  certify->add_option("--e0", cert_e0)->required();
  certify->add_option("--delta", cert_delta);
  certify->add_option("--lambda", cert_lambda);

  std::string curve, lengths;
  auto* collar = app.add_subcommand("collar-scalings", "Curve-collapse scaling table on collars");
  collar->add_option("--curve", curve)->required()->check(CLI::IsMember({"segment", "arc"}));
  collar->add_option("--lengths", lengths, "Comma-separated collar half-lengths X")->required();

  std::string neck_config;
  auto* neck = app.add_subcommand("neck-demo", "Winding torus flow into the circle");
  neck->add_option("--config", neck_config)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tc::kConfigError;
  }
  if (ci) {
    teichflow::set_thread_count(1);
  } else if (threads > 0) {
    teichflow::set_thread_count(threads);
  }

  if (*sim) return tc::simulate(config, out, std::cout);
  if (*analyze) {
    if (e0 >= 0.0) an.e0 = e0;
    return tc::analyze(an, out, std::cout);
  }
  if (*certify) return tc::certify(cert_snapshot, cert_e0, cert_delta, cert_lambda, out, std::cout);
  if (*collar) {
    try {
      return tc::collar_scalings(curve, tc::parse_list(lengths), out, std::cout);
    } catch (const teichflow::ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return tc::kConfigError;
    }
  }
  if (*neck) return tc::neck_demo(neck_config, out, std::cout);
  return tc::kConfigError;
}
