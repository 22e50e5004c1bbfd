#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "isat/config.hpp"
#include "isat/csv.hpp"

namespace isat::acceptance {

/// Every parameter of the acceptance suite. Defaults are the full-scale values;
/// each field maps to the config key given in its comment.
struct Settings {
  std::uint64_t seed = 20240601;            // seed
  int threads = 1;                          // threads

  std::uint64_t probe_samples = 1'000'000;  // probe.samples
  double probe_sigmas = 3.0;                // probe.sigmas
  double probe_max_seconds = 10.0;          // probe.max_seconds
  std::uint64_t cdf_samples = 1'000'000;    // cdf.samples
  double cdf_tolerance = 0.005;             // cdf.tolerance

  std::vector<std::uint64_t> queue_mean_a{1, 2, 5};         // queue.mean.a
  std::vector<double> queue_mean_lambda_b{0.3, 0.6, 0.8};   // queue.mean.lambda_b
  std::uint64_t queue_n = 13000;                            // queue.n
  std::size_t queue_mean_runs = 100'000;                    // queue.mean.runs
  double queue_mean_tolerance = 0.05;                       // queue.mean.tolerance
  double queue_mean_max_seconds = 60.0;                     // queue.mean.max_seconds

  double queue_tail_lambda_b = 0.5;                         // queue.tail.lambda_b
  std::uint64_t queue_tail_a = 1;                           // queue.tail.a
  std::size_t queue_tail_runs = 1'000'000;                  // queue.tail.runs
  std::uint64_t queue_tail_alpha_max = 40;                  // queue.tail.alpha_max
  double queue_tail_max_slope = -0.01;                      // queue.tail.max_slope

  double exponent_r_lo = 0.5;      // exponent.r_lo
  double exponent_r_hi = 0.95;     // exponent.r_hi
  std::size_t exponent_points = 20;// exponent.points

  std::vector<double> ivp_c{0.5, 1.0, 2.0, 3.0};  // ivp.c
  double ivp_x_stop = 1e-3;                       // ivp.x_stop
  double ivp_step = 1e-5;                         // ivp.step
  double ivp_halving_tolerance = 1e-8;            // ivp.halving_tolerance

  double threshold_eps = 1e-3;     // threshold.eps
  double threshold_tol = 1e-3;     // threshold.tol
  double threshold_c_lo = 1.0;     // threshold.c_lo
  double threshold_c_hi = 3.0;     // threshold.c_hi
  double threshold_lo = 2.25;      // threshold.accept_lo
  double threshold_hi = 2.35;      // threshold.accept_hi
  double threshold_max_seconds = 60.0;  // threshold.max_seconds

  double handoff_c = 2.3;               // handoff.c
  double handoff_c_prime = 35.0 / 24.0; // handoff.c_prime

  std::size_t two_isat_instances = 500;  // two_isat.instances
  std::size_t two_isat_max_n = 6;        // two_isat.max_n
  std::size_t two_isat_max_m = 12;       // two_isat.max_m
  double two_isat_max_seconds = 30.0;    // two_isat.max_seconds

  std::size_t phase2_n = 10'000;      // phase2.n
  double phase2_c = 1.2;              // phase2.c
  std::size_t phase2_trials = 100;    // phase2.trials
  double phase2_min_fraction = 0.95;  // phase2.min_fraction

  std::size_t soundness_runs = 10'000;     // soundness.runs
  std::size_t soundness_n = 1000;          // soundness.n
  double soundness_c = 2.0;                // soundness.c
  std::size_t soundness_small_runs = 2000; // soundness.small_runs
  std::size_t soundness_small_max_n = 8;   // soundness.small_max_n
  std::size_t soundness_small_max_m = 12;  // soundness.small_max_m

  std::size_t success_n = 10'000;                     // success.n
  std::vector<double> success_c{2.0, 2.2};            // success.c (first value is gated)
  std::size_t success_trials = 50;                    // success.trials
  double success_c_prime = 35.0 / 24.0;               // success.c_prime
  double success_min_fraction = 0.9;                  // success.min_fraction

  std::size_t tracking_n = 100'000;                   // tracking.n
  double tracking_c = 2.0;                            // tracking.c
  double tracking_c_prime = 1.0;                      // tracking.c_prime
  std::vector<double> tracking_points{0.9, 0.7, 0.5}; // tracking.points
  double tracking_tolerance = 0.02;                   // tracking.tolerance
  double tracking_max_seconds = 120.0;                // tracking.max_seconds

  std::size_t drift_X = 80000;       // drift.X
  std::size_t drift_Y2 = 20000;      // drift.Y2
  std::size_t drift_Y3 = 102400;     // drift.Y3
  std::size_t drift_formulas = 100;  // drift.formulas
  std::size_t drift_window = 100;    // drift.window
  double drift_eps = 1e-3;           // drift.eps
  double drift_tolerance = 0.05;     // drift.tolerance
  std::size_t drift_min_iterations = 10'000;  // drift.min_iterations

  std::vector<std::uint64_t> determinism_threads{1, 8};  // determinism.threads
  bool determinism_enabled = true;                       // determinism.enabled

  /// Reads every known key; unknown keys are a ConfigError.
  [[nodiscard]] static Settings from_config(const Config& config);
  [[nodiscard]] static const std::set<std::string>& known_keys();

  /// Small instance of the suite used by the determinism check.
  [[nodiscard]] Settings reduced() const;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  CsvTable table;  // deterministic numerical results only
};

inline constexpr int kCriteria = 15;

/// Criterion `id` (1..15). Criterion 15 writes into `scratch_dir`.
[[nodiscard]] CriterionResult run_criterion(int id, const Settings& settings,
                                            const std::filesystem::path& scratch_dir);

[[nodiscard]] std::string criterion_slug(int id);

struct RunAllOptions {
  std::filesystem::path out_dir = "isat-report";
  bool timestamp = true;
  std::vector<int> only;  // empty = every criterion
  /// Called after each criterion, e.g. to print progress.
  void (*on_result)(const CriterionResult&) = nullptr;
};

struct SuiteReport {
  std::vector<CriterionResult> results;
  [[nodiscard]] bool all_passed() const;
};

/// Runs the selected criteria, writes one CSV per criterion and summary.json
/// into out_dir.
SuiteReport run_all(const Settings& settings, const RunAllOptions& options);

}  // namespace isat::acceptance
