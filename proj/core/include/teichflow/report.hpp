#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "teichflow/analyzer.hpp"

namespace teichflow {

struct AnalysisReport {
  std::vector<std::pair<std::string, std::string>> header;
  std::optional<BranchDecomposition> decomposition;
  std::optional<DecayCertificate> decay;
  std::optional<EnergyLossLedger> ledger;
  std::optional<ConcentrationReport> concentration;
};

/// Text with [decomposition], [decay], [ledger] and [concentration] sections.
std::string format_text(const AnalysisReport& r);

/// One JSON object per line and per present section, each tagged with
/// "section".
std::string format_json(const AnalysisReport& r);

}  // namespace teichflow
