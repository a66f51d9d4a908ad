#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace teichflow {

/// Error in a run configuration (unknown key, bad value, unreadable file).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat "key = value" settings. Lines starting with '#' and blank lines are
/// ignored. Parsing against a schema rejects unknown keys and fills defaults.
class RunConfig {
 public:
  using Schema = std::map<std::string, std::string>;  ///< key -> default

  static RunConfig parse(std::istream& is, const Schema& schema);
  static RunConfig load(const std::filesystem::path& path, const Schema& schema);
  static RunConfig defaults(const Schema& schema);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  long long get_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  /// Sorted "key = value" lines of the resolved configuration.
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;
  /// canonical() with every line prefixed by "# " plus a hash line.
  std::string header() const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Keys accepted by simulate and neck-demo.
RunConfig::Schema simulate_schema();
RunConfig::Schema neck_demo_schema();

std::uint64_t fnv1a64(const std::string& s);

}  // namespace teichflow
