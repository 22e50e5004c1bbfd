#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "isat/formula.hpp"

namespace isat {

/// Malformed formula text. `line` is 1-based; 0 means end of input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

// Text format:
//   # comment
//   p isat <n> <m>
//   <var> <lo> <hi> [<var> <lo> <hi> ...] 0      (m lines, vars 1-based)
// Floats are written in shortest round-trip form, so read(write(F)) == F.

[[nodiscard]] Formula parse_formula(std::istream& in);
[[nodiscard]] Formula read_formula(const std::filesystem::path& path);
void write_formula(std::ostream& out, const Formula& formula);
void write_formula(const Formula& formula, const std::filesystem::path& path);

/// `v <var> <value>` lines (1-based vars) for every set entry.
void write_assignment(std::ostream& out, const Assignment& assignment);

/// Shortest decimal string that parses back to exactly `x`.
[[nodiscard]] std::string format_double(double x);

}  // namespace isat
