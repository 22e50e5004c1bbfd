#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace isat {

inline constexpr const char* kToolVersion = "0.1.0";

struct Provenance {
  std::string command;
  std::uint64_t seed = 0;
  bool timestamp = true;
};

/// A header row plus data rows; cells are already formatted.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// Shortest round-trip text for doubles, decimal for integers, "true"/"false" for bools.
[[nodiscard]] std::string cell(double x);
[[nodiscard]] std::string cell(std::uint64_t x);
[[nodiscard]] std::string cell(int x);
[[nodiscard]] std::string cell(bool x);
[[nodiscard]] inline std::string cell(const std::string& s) { return s; }
[[nodiscard]] inline std::string cell(const char* s) { return s; }

/// "# isat <version> command=<command> seed=<seed>[ timestamp=<UTC ISO-8601>]"
[[nodiscard]] std::string provenance_line(const Provenance& p);

void write_csv(std::ostream& out, const CsvTable& table, const Provenance& p);
void write_csv(const std::filesystem::path& path, const CsvTable& table, const Provenance& p);

}  // namespace isat
