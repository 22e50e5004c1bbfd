#include "isat/csv.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "isat/formula_io.hpp"

namespace isat {

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw std::invalid_argument("CSV row width does not match header");
  rows.push_back(std::move(row));
}

std::string cell(double x) { return format_double(x); }
std::string cell(std::uint64_t x) { return std::to_string(x); }
std::string cell(int x) { return std::to_string(x); }
std::string cell(bool x) { return x ? "true" : "false"; }

std::string provenance_line(const Provenance& p) {
  std::string line = std::string("# isat ") + kToolVersion + " command=" + p.command +
                     " seed=" + std::to_string(p.seed);
  if (p.timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    line += std::string(" timestamp=") + buf;
  }
  return line;
}

namespace {

void write_row(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    const std::string& c = row[i];
    if (c.find_first_of(",\"\n") == std::string::npos) {
      out << c;
    } else {
      out << '"';
      for (char ch : c) out << (ch == '"' ? "\"\"" : std::string(1, ch));
      out << '"';
    }
  }
  out << '\n';
}

}  // namespace

void write_csv(std::ostream& out, const CsvTable& table, const Provenance& p) {
  out << provenance_line(p) << '\n';
  write_row(out, table.header);
  for (const auto& r : table.rows) write_row(out, r);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table, const Provenance& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(out, table, p);
}

}  // namespace isat
