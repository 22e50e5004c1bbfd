// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Usage: isat_acceptance [config] [--out dir] [--threads n]

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "isat/acceptance.hpp"

using namespace isat;

int main(int argc, char** argv) {
  std::string config_path;
  std::filesystem::path out = "acceptance-report";
  int threads = -1;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--out" && i + 1 < argc) {
      out = argv[++i];
    } else if (arg == "--threads" && i + 1 < argc) {
      threads = std::atoi(argv[++i]);
    } else if (!arg.empty() && arg[0] != '-') {
      config_path = arg;
    } else {
      std::cerr << "usage: isat_acceptance [config] [--out dir] [--threads n]\n";
      return 2;
    }
  }

  acceptance::Settings settings;
  try {
    Config cfg;
    if (!config_path.empty()) cfg = Config::load(config_path);
    settings = acceptance::Settings::from_config(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (threads > 0) settings.threads = threads;

  acceptance::RunAllOptions opt;
  opt.out_dir = out;
  opt.timestamp = false;
  opt.on_result = [](const acceptance::CriterionResult& r) {
    std::printf("%s  %2d  %-20s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  };
  const auto report = acceptance::run_all(settings, opt);
  std::size_t passed = 0;
  for (const auto& r : report.results) passed += r.passed;
  std::printf("%zu/%zu criteria passed\n", passed, report.results.size());
  return report.all_passed() ? 0 : 1;
}
