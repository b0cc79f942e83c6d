#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sipkit {

/// Flat `key = value` configuration. Later assignments override earlier
/// ones, so command-line flags are applied after the file.
class Config {
 public:
  /// Lines `key = value`; `#` starts a comment; blank lines ignored.
  /// Throws Error(ConfigError) on malformed lines.
  static Config parse(const std::string& text);
  /// Throws Error(ConfigError) when the file cannot be read.
  static Config from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  void erase(const std::string& key) { values_.erase(key); }
  void merge(const Config& overrides);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, std::string>& entries() const noexcept { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int64_t get_int(const std::string& key, int64_t fallback) const;
  uint64_t get_u64(const std::string& key, uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma or whitespace separated list.
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<int64_t> get_ints(const std::string& key, const std::vector<int64_t>& fallback) const;

  /// Error(ConfigError) naming the first key outside `known`.
  void check_known(const std::set<std::string>& known) const;

  /// Sorted `key = value` lines, and their FNV-1a hash.
  std::string canonical() const;
  uint64_t hash() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace sipkit
