#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace isat {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` file. Blank lines and lines starting with '#' or ';' are
/// ignored; a `[section]` line prefixes following keys with "section.".
class Config {
 public:
  Config() = default;
  [[nodiscard]] static Config parse(std::istream& in);
  [[nodiscard]] static Config load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }

  [[nodiscard]] double get_double(const std::string& key, double fallback) const;
  [[nodiscard]] std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const;
  [[nodiscard]] std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
  [[nodiscard]] std::vector<std::uint64_t> get_u64s(const std::string& key,
                                                    std::vector<std::uint64_t> fallback) const;

  /// Throws ConfigError naming the first key not in `known`.
  void require_known(const std::set<std::string>& known) const;

  [[nodiscard]] const std::map<std::string, std::string>& values() const noexcept { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace isat
