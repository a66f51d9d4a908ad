#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "teichflow/field.hpp"

namespace teichflow {

/// A map field plus free-form metadata (time, moduli, config hash).
struct Snapshot {
  MapField field;
  std::map<std::string, std::string> meta;
};

/// Text record:
///   teichflow-snapshot 1
///   grid.s_min = ...            (grid.*, target and meta.* keys)
///   values
///   <one node per line, row-major, 17 significant digits>
///   end
void write_snapshot(std::ostream& os, const MapField& f, const std::map<std::string, std::string>& meta = {});
void write_snapshot(const std::filesystem::path& path, const MapField& f,
                    const std::map<std::string, std::string>& meta = {});

/// Throws DomainError on malformed input.
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace teichflow
