#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace teichflow::cli {

enum ExitCode : int {
  kPass = 0,
  kConfigError = 2,
  kNumericalFailure = 3,
  kDeclined = 4,
  kFail = 5,
};

struct AnalyzeArgs {
  std::filesystem::path snapshot;
  double delta = 0.1;
  double gap = 10.0;
  double lambda = 2.0;
  std::optional<double> e0;
};

int simulate(const std::filesystem::path& config, const std::filesystem::path& out, std::ostream& log);
int analyze(const AnalyzeArgs& args, const std::filesystem::path& out, std::ostream& log);
int certify(const std::filesystem::path& snapshot, double e0, double delta, double lambda,
            const std::filesystem::path& out, std::ostream& log);
int collar_scalings(const std::string& curve, const std::vector<double>& lengths, const std::filesystem::path& out,
                    std::ostream& log);
int neck_demo(const std::filesystem::path& config, const std::filesystem::path& out, std::ostream& log);

/// Parses "25,50,100" into numbers; throws ConfigError.
std::vector<double> parse_list(const std::string& csv);

}  // namespace teichflow::cli
