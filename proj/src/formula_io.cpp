#include "isat/formula_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace isat {

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return std::string(buf, end);
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

Formula parse_formula(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  bool have_header = false;
  Formula formula;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0].starts_with('#')) continue;

    if (!have_header) {
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "isat" || !parse_number(toks[2], n) ||
          !parse_number(toks[3], m))
        throw ParseError(lineno, "expected header 'p isat <n> <m>'");
      have_header = true;
      formula = Formula(n);
      continue;
    }

    if (formula.num_clauses() == m)
      throw ParseError(lineno, "more clause lines than the " + std::to_string(m) +
                                   " declared in the header");
    if (toks.back() != "0") throw ParseError(lineno, "clause not terminated by 0");
    if ((toks.size() - 1) % 3 != 0)
      throw ParseError(lineno, "clause literals must be '<var> <lo> <hi>' triples");

    std::vector<Literal> lits;
    for (std::size_t t = 0; t + 1 < toks.size(); t += 3) {
      long long var = 0;
      double lo = 0;
      double hi = 0;
      if (!parse_number(toks[t], var)) throw ParseError(lineno, "bad variable id");
      if (var < 1 || static_cast<unsigned long long>(var) > n)
        throw ParseError(lineno, "variable id " + std::string(toks[t]) + " out of range 1.." +
                                     std::to_string(n));
      if (!parse_number(toks[t + 1], lo) || !parse_number(toks[t + 2], hi))
        throw ParseError(lineno, "bad interval endpoint");
      if (!(0.0 <= lo && lo <= hi && hi <= 1.0))
        throw ParseError(lineno, "interval [" + std::string(toks[t + 1]) + ", " +
                                     std::string(toks[t + 2]) + "] is not a subinterval of [0,1]");
      lits.push_back({static_cast<Var>(var - 1), Interval(lo, hi)});
    }
    try {
      formula.add_clause(Clause(lits));
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }

  if (!have_header) throw ParseError(0, "missing header 'p isat <n> <m>'");
  if (formula.num_clauses() != m)
    throw ParseError(0, "header declares " + std::to_string(m) + " clauses, found " +
                            std::to_string(formula.num_clauses()));
  return formula;
}

Formula read_formula(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_formula(in);
}

void write_formula(std::ostream& out, const Formula& formula) {
  out << "p isat " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  for (const auto& clause : formula.clauses()) {
    for (const auto& lit : clause.literals())
      out << (lit.var + 1) << ' ' << format_double(lit.sign.lo) << ' '
          << format_double(lit.sign.hi) << ' ';
    out << "0\n";
  }
}

void write_formula(const Formula& formula, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_formula(out, formula);
}

void write_assignment(std::ostream& out, const Assignment& assignment) {
  for (Var v = 0; v < assignment.num_vars(); ++v)
    if (assignment.has(v)) out << "v " << (v + 1) << ' ' << format_double(assignment[v]) << '\n';
}

}  // namespace isat
