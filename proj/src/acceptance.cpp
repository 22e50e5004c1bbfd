#include "isat/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <type_traits>
#include <variant>

#include "json.hpp"

#include "isat/branching_queue.hpp"
#include "isat/experiments.hpp"
#include "isat/formula_io.hpp"
#include "isat/interval_math.hpp"
#include "isat/ode_threshold.hpp"
#include "isat/oracle.hpp"
#include "isat/parallel.hpp"
#include "isat/two_isat.hpp"
#include "isat/uc_solver.hpp"

namespace isat::acceptance {

namespace {

static_assert(std::is_same_v<std::size_t, std::uint64_t>, "size_t keys are read as 64-bit integers");

using Binding = std::variant<double*, std::uint64_t*, int*, bool*, std::vector<double>*,
                             std::vector<std::uint64_t>*>;

std::vector<std::pair<std::string, Binding>> bindings(Settings& s) {
  return {
      {"seed", &s.seed},
      {"threads", &s.threads},
      {"probe.samples", &s.probe_samples},
      {"probe.sigmas", &s.probe_sigmas},
      {"probe.max_seconds", &s.probe_max_seconds},
      {"cdf.samples", &s.cdf_samples},
      {"cdf.tolerance", &s.cdf_tolerance},
      {"queue.mean.a", &s.queue_mean_a},
      {"queue.mean.lambda_b", &s.queue_mean_lambda_b},
      {"queue.n", &s.queue_n},
      {"queue.mean.runs", &s.queue_mean_runs},
      {"queue.mean.tolerance", &s.queue_mean_tolerance},
      {"queue.mean.max_seconds", &s.queue_mean_max_seconds},
      {"queue.tail.lambda_b", &s.queue_tail_lambda_b},
      {"queue.tail.a", &s.queue_tail_a},
      {"queue.tail.runs", &s.queue_tail_runs},
      {"queue.tail.alpha_max", &s.queue_tail_alpha_max},
      {"queue.tail.max_slope", &s.queue_tail_max_slope},
      {"exponent.r_lo", &s.exponent_r_lo},
      {"exponent.r_hi", &s.exponent_r_hi},
      {"exponent.points", &s.exponent_points},
      {"ivp.c", &s.ivp_c},
      {"ivp.x_stop", &s.ivp_x_stop},
      {"ivp.step", &s.ivp_step},
      {"ivp.halving_tolerance", &s.ivp_halving_tolerance},
      {"threshold.eps", &s.threshold_eps},
      {"threshold.tol", &s.threshold_tol},
      {"threshold.c_lo", &s.threshold_c_lo},
      {"threshold.c_hi", &s.threshold_c_hi},
      {"threshold.accept_lo", &s.threshold_lo},
      {"threshold.accept_hi", &s.threshold_hi},
      {"threshold.max_seconds", &s.threshold_max_seconds},
      {"handoff.c", &s.handoff_c},
      {"handoff.c_prime", &s.handoff_c_prime},
      {"two_isat.instances", &s.two_isat_instances},
      {"two_isat.max_n", &s.two_isat_max_n},
      {"two_isat.max_m", &s.two_isat_max_m},
      {"two_isat.max_seconds", &s.two_isat_max_seconds},
      {"phase2.n", &s.phase2_n},
      {"phase2.c", &s.phase2_c},
      {"phase2.trials", &s.phase2_trials},
      {"phase2.min_fraction", &s.phase2_min_fraction},
      {"soundness.runs", &s.soundness_runs},
      {"soundness.n", &s.soundness_n},
      {"soundness.c", &s.soundness_c},
      {"soundness.small_runs", &s.soundness_small_runs},
      {"soundness.small_max_n", &s.soundness_small_max_n},
      {"soundness.small_max_m", &s.soundness_small_max_m},
      {"success.n", &s.success_n},
      {"success.c", &s.success_c},
      {"success.trials", &s.success_trials},
      {"success.c_prime", &s.success_c_prime},
      {"success.min_fraction", &s.success_min_fraction},
      {"tracking.n", &s.tracking_n},
      {"tracking.c", &s.tracking_c},
      {"tracking.c_prime", &s.tracking_c_prime},
      {"tracking.points", &s.tracking_points},
      {"tracking.tolerance", &s.tracking_tolerance},
      {"tracking.max_seconds", &s.tracking_max_seconds},
      {"drift.X", &s.drift_X},
      {"drift.Y2", &s.drift_Y2},
      {"drift.Y3", &s.drift_Y3},
      {"drift.formulas", &s.drift_formulas},
      {"drift.window", &s.drift_window},
      {"drift.eps", &s.drift_eps},
      {"drift.tolerance", &s.drift_tolerance},
      {"drift.min_iterations", &s.drift_min_iterations},
      {"determinism.threads", &s.determinism_threads},
      {"determinism.enabled", &s.determinism_enabled},
  };
}

}  // namespace

Settings Settings::from_config(const Config& config) {
  config.require_known(known_keys());
  Settings s;
  for (auto& [key, target] : bindings(s)) {
    std::visit(
        [&, &key = key](auto* p) {
          using T = std::remove_pointer_t<decltype(p)>;
          if constexpr (std::is_same_v<T, double>) *p = config.get_double(key, *p);
          else if constexpr (std::is_same_v<T, std::uint64_t>) *p = config.get_u64(key, *p);
          else if constexpr (std::is_same_v<T, int>) *p = static_cast<int>(config.get_u64(key, static_cast<std::uint64_t>(*p)));
          else if constexpr (std::is_same_v<T, bool>) *p = config.get_bool(key, *p);
          else if constexpr (std::is_same_v<T, std::vector<double>>) *p = config.get_doubles(key, *p);
          else *p = config.get_u64s(key, *p);
        },
        target);
  }
  if (s.threads < 1) throw ConfigError("threads must be at least 1");
  return s;
}

const std::set<std::string>& Settings::known_keys() {
  static const std::set<std::string> keys = [] {
    Settings s;
    std::set<std::string> out;
    for (const auto& b : bindings(s)) out.insert(b.first);
    return out;
  }();
  return keys;
}

Settings Settings::reduced() const {
  Settings s = *this;
  s.probe_samples = 50'000;
  s.cdf_samples = 50'000;
  s.queue_mean_runs = 2000;
  s.queue_tail_runs = 20'000;
  s.ivp_c = {1.0, 2.0};
  s.ivp_x_stop = 0.5;
  s.ivp_step = 1e-4;
  s.threshold_tol = 1e-2;
  s.threshold_eps = 1e-2;
  s.two_isat_instances = 100;
  s.phase2_n = 500;
  s.phase2_trials = 20;
  s.soundness_runs = 40;
  s.soundness_n = 200;
  s.soundness_small_runs = 100;
  s.success_n = 500;
  s.success_trials = 10;
  s.tracking_n = 5000;
  s.drift_X = 4000;
  s.drift_Y2 = 1000;
  s.drift_Y3 = 5120;
  s.drift_formulas = 8;
  s.drift_window = 20;
  s.drift_min_iterations = 100;
  s.determinism_enabled = false;
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::uint64_t criterion_seed(const Settings& s, int id) {
  return split_seed(s.seed, static_cast<std::uint64_t>(id));
}

// ---------------------------------------------------------------------------

CriterionResult interval_laws(const Settings& s) {
  CriterionResult r;
  const auto t0 = Clock::now();
  const auto rows = probe_table(s.probe_samples, criterion_seed(s, 1), s.threads);
  r.seconds = seconds_since(t0);

  r.table.header = {"quantity", "closed_form", "estimate", "std_error", "z", "gated"};
  const std::string quartic = describe({Quantity::BarxQuartic});
  double worst = 0.0;
  std::string worst_name;
  bool ok = true;
  for (const auto& row : rows) {
    const double z = (row.estimate.mean - row.closed_form) / row.estimate.std_error;
    const bool gated = row.quantity != quartic;
    if (gated) {
      if (!(std::abs(z) <= s.probe_sigmas)) ok = false;
      if (std::abs(z) > worst) {
        worst = std::abs(z);
        worst_name = row.quantity;
      }
    }
    r.table.add_row({row.quantity, cell(row.closed_form), cell(row.estimate.mean),
                     cell(row.estimate.std_error), cell(z), cell(gated)});
  }
  const bool fast = r.seconds < s.probe_max_seconds;
  r.passed = ok && fast;
  r.detail = "max |z| = " + fmt(worst) + " (" + worst_name + "), limit " + fmt(s.probe_sigmas) +
             "; " + fmt(r.seconds) + " s (limit " + fmt(s.probe_max_seconds) + " s)";
  return r;
}

CriterionResult cdf_with_atom(const Settings& s) {
  CriterionResult r;
  const double sup = barx_cdf_sup_distance(s.cdf_samples, criterion_seed(s, 2));
  const double atom = cdf_barx(0.5) - cdf_barx(std::nextafter(0.5, 0.0));
  const bool atom_ok = std::abs(atom - 0.5) < 1e-12;
  r.passed = sup <= s.cdf_tolerance && atom_ok;
  r.table.header = {"samples", "sup_distance", "tolerance", "atom_at_half"};
  r.table.add_row({cell(s.cdf_samples), cell(sup), cell(s.cdf_tolerance), cell(atom)});
  r.detail = "sup distance " + fmt(sup) + " (limit " + fmt(s.cdf_tolerance) + "), atom at 1/2 = " +
             fmt(atom);
  return r;
}

CriterionResult queue_mean(const Settings& s) {
  CriterionResult r;
  r.table.header = {"a", "m", "n", "lambda_B", "closed_form", "mean", "std_error", "runs", "relative_error"};
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::uint64_t idx = 0;
  for (const std::uint64_t a : s.queue_mean_a)
    for (const double lb : s.queue_mean_lambda_b) {
      const auto m = static_cast<std::uint64_t>(
          std::llround(lb * 12.0 / 13.0 * static_cast<double>(s.queue_n)));
      const auto row = queue::mean_experiment(a, m, s.queue_n, s.queue_mean_runs,
                                              split_seed(criterion_seed(s, 3), idx++), s.threads);
      const double rel = std::abs(row.mean - row.closed_form) / row.closed_form;
      worst = std::max(worst, rel);
      r.table.add_row({cell(a), cell(m), cell(s.queue_n), cell(row.lambda_B), cell(row.closed_form),
                       cell(row.mean), cell(row.std_error), cell(row.runs), cell(rel)});
    }
  r.seconds = seconds_since(t0);
  r.passed = worst <= s.queue_mean_tolerance && r.seconds < s.queue_mean_max_seconds;
  r.detail = "max relative error " + fmt(worst) + " (limit " + fmt(s.queue_mean_tolerance) + "); " +
             fmt(r.seconds) + " s (limit " + fmt(s.queue_mean_max_seconds) + " s)";
  return r;
}

CriterionResult queue_tail(const Settings& s) {
  CriterionResult r;
  const auto m = static_cast<std::uint64_t>(
      std::llround(s.queue_tail_lambda_b * 12.0 / 13.0 * static_cast<double>(s.queue_n)));
  std::vector<std::uint64_t> grid;
  for (std::uint64_t a = 1; a <= s.queue_tail_alpha_max; ++a) grid.push_back(a);
  const auto tail = queue::tail_estimate(s.queue_tail_a, m, s.queue_n, grid, s.queue_tail_runs,
                                         criterion_seed(s, 4), s.threads);
  r.table.header = {"alpha", "exceed", "probability"};
  for (const auto& row : tail.rows)
    r.table.add_row({cell(row.alpha), cell(row.exceed), cell(row.probability)});
  r.table.add_row({"slope", cell(tail.fit_points), cell(tail.slope)});
  r.passed = tail.fit_points >= 2 && tail.slope < s.queue_tail_max_slope;
  r.detail = "fitted slope " + fmt(tail.slope) + " over " + std::to_string(tail.fit_points) +
             " points (must be < " + fmt(s.queue_tail_max_slope) + ")";
  return r;
}

CriterionResult exponent(const Settings& s) {
  CriterionResult r;
  r.table.header = {"r", "u", "delta", "derivative"};
  double worst = -1e300;
  for (std::size_t i = 0; i < s.exponent_points; ++i) {
    const double t = s.exponent_points > 1 ? static_cast<double>(i) / static_cast<double>(s.exponent_points - 1) : 0.0;
    const double rr = s.exponent_r_lo + t * (s.exponent_r_hi - s.exponent_r_lo);
    const auto d = queue::exponent_diagnostic(rr);
    worst = std::max(worst, d.delta);
    r.table.add_row({cell(rr), cell(d.u), cell(d.delta), cell(d.derivative)});
  }
  r.passed = s.exponent_points > 0 && worst < 0.0;
  r.detail = "max delta " + fmt(worst) + " over " + std::to_string(s.exponent_points) + " points";
  return r;
}

CriterionResult ivp_barriers(const Settings& s) {
  CriterionResult r;
  r.table.header = {"c", "completed", "x_end", "max_gap_6x", "max_gap_5", "halving_sup"};
  bool ok = true;
  double worst_halving = 0.0;
  const auto per_c = map_indexed(s.ivp_c.size(), s.threads, [&](std::size_t i) {
    const double c = s.ivp_c[i];
    const auto sol = ode::integrate(c, s.ivp_x_stop, s.ivp_step);
    const auto coarse = ode::integrate(c, 1.0 / 3.0, s.ivp_step);
    const auto fine = ode::integrate(c, 1.0 / 3.0, s.ivp_step / 2.0);
    double halving = 0.0;
    if (coarse.status != ode::Status::Completed || fine.status != ode::Status::Completed) {
      halving = INFINITY;
    } else {
      for (std::size_t k = 0; k + 1 < coarse.x.size(); ++k)
        halving = std::max(halving, std::abs(coarse.y[k] - fine.y[2 * k]));
      halving = std::max(halving, std::abs(coarse.y.back() - fine.y.back()));
    }
    return std::tuple{sol.status == ode::Status::Completed, sol.x_end, ode::barrier_report(sol), halving};
  });
  for (std::size_t i = 0; i < per_c.size(); ++i) {
    const auto& [done, x_end, bar, halving] = per_c[i];
    ok = ok && done && bar.holds() && halving <= s.ivp_halving_tolerance;
    worst_halving = std::max(worst_halving, halving);
    r.table.add_row({cell(s.ivp_c[i]), cell(done), cell(x_end), cell(bar.max_gap_6x),
                     cell(bar.max_gap_5), cell(halving)});
  }
  const double spot = ode::rhs(0.8, 4.8, 3.0);
  const bool spot_ok = std::abs(spot - 6.24) <= 1e-12;
  bool sign_ok = true;
  for (int k = 0; k < 100; ++k) {
    const double x = 0.8 + 0.2 * k / 99.0;
    if (!(ode::rhs(x, 5.0 * (1.0 - x), 3.0) > -5.0)) sign_ok = false;
  }
  r.passed = ok && spot_ok && sign_ok;
  r.detail = std::string(ok ? "barriers hold" : "barrier or halving check failed") +
             "; rhs(4/5, 24/5, 3) = " + format_double(spot) + "; max halving difference " +
             fmt(worst_halving) + " (limit " + fmt(s.ivp_halving_tolerance) + ")" +
             (sign_ok ? "" : "; rhs > -5 fails on [4/5, 1]");
  return r;
}

CriterionResult threshold(const Settings& s) {
  CriterionResult r;
  const auto t0 = Clock::now();
  const double c = ode::find_threshold(s.threshold_eps, s.threshold_c_lo, s.threshold_c_hi,
                                       s.threshold_tol, s.ivp_step);
  r.seconds = seconds_since(t0);
  r.table.header = {"eps", "tol", "threshold"};
  r.table.add_row({cell(s.threshold_eps), cell(s.threshold_tol), cell(c)});
  r.passed = c >= s.threshold_lo && c <= s.threshold_hi && r.seconds < s.threshold_max_seconds;
  r.detail = "threshold " + fmt(c) + ", accepted [" + fmt(s.threshold_lo) + ", " + fmt(s.threshold_hi) +
             "]; " + fmt(r.seconds) + " s";
  return r;
}

CriterionResult handoff(const Settings& s) {
  CriterionResult r;
  const auto h = ode::handoff_check(s.handoff_c, s.handoff_c_prime, s.ivp_step);
  r.table.header = {"c", "c_prime", "y_third", "clause_mass", "budget", "two_clause_density",
                    "residual_density"};
  r.table.add_row({cell(h.c), cell(h.c_prime), cell(h.y_third), cell(h.clause_mass), cell(h.budget),
                   cell(h.two_clause_density), cell(h.residual_density)});
  r.passed = h.clause_mass <= h.budget && h.residual_density < 1.5;
  r.detail = "y(1/3) + c/27 = " + fmt(h.clause_mass) + " vs c'/3 = " + fmt(h.budget) +
             "; residual density " + fmt(h.residual_density);
  return r;
}

CriterionResult two_isat_correctness(const Settings& s) {
  CriterionResult r;
  struct Outcome {
    std::size_t n, m;
    bool decide_sat, oracle_sat, verified;
  };
  const auto t0 = Clock::now();
  const auto outs = map_indexed(s.two_isat_instances, s.threads, [&](std::size_t i) {
    const std::uint64_t seed = split_seed(criterion_seed(s, 9), i);
    Rng rng(seed);
    const auto n = std::uniform_int_distribution<std::size_t>(2, s.two_isat_max_n)(rng);
    const auto m = std::uniform_int_distribution<std::size_t>(0, s.two_isat_max_m)(rng);
    const Formula f = generate_formula(n, m, 2, split_seed(seed, 1));
    const auto d = decide(f);
    const bool dsat = std::holds_alternative<TwoSat>(d);
    const bool osat = std::holds_alternative<OracleSat>(brute_decide(f));
    const bool ver = !dsat || verify(f, std::get<TwoSat>(d).assignment);
    return Outcome{n, m, dsat, osat, ver};
  });
  r.seconds = seconds_since(t0);
  std::size_t sat = 0, disagree = 0, bad = 0;
  for (const auto& o : outs) {
    sat += o.oracle_sat;
    disagree += o.decide_sat != o.oracle_sat;
    bad += !o.verified;
  }
  r.table.header = {"instances", "oracle_sat", "oracle_unsat", "disagreements", "verify_failures"};
  r.table.add_row({cell(outs.size()), cell(sat), cell(outs.size() - sat), cell(disagree), cell(bad)});
  r.passed = disagree == 0 && bad == 0 && r.seconds < s.two_isat_max_seconds;
  r.detail = std::to_string(outs.size()) + " instances (" + std::to_string(sat) + " sat), " +
             std::to_string(disagree) + " disagreements, " + std::to_string(bad) +
             " verify failures; " + fmt(r.seconds) + " s";
  return r;
}

CriterionResult two_isat_regime(const Settings& s) {
  CriterionResult r;
  const auto rows = phase_experiment(s.phase2_n, {s.phase2_c}, s.phase2_trials, criterion_seed(s, 10), s.threads);
  const auto& row = rows.front();
  r.table.header = {"c", "n", "trials", "satisfiable", "fraction", "ci_lo", "ci_hi"};
  r.table.add_row({cell(row.c), cell(row.n), cell(row.trials), cell(row.satisfiable), cell(row.fraction),
                   cell(row.ci_lo), cell(row.ci_hi)});
  r.passed = row.fraction >= s.phase2_min_fraction;
  r.detail = "satisfiable fraction " + fmt(row.fraction) + " (" + std::to_string(row.satisfiable) + "/" +
             std::to_string(row.trials) + "), required " + fmt(s.phase2_min_fraction);
  return r;
}

CriterionResult soundness(const Settings& s) {
  CriterionResult r;
  struct Run {
    bool sat, verified;
    uc::GaveUpCause cause;
    std::size_t empty, zen, go_zen, unit, mono;
  };
  const std::uint64_t base = criterion_seed(s, 11);
  const std::uint64_t big_seed = split_seed(base, 0), small_seed = split_seed(base, 1);
  const auto m_big = static_cast<std::size_t>(std::floor(s.soundness_c * static_cast<double>(s.soundness_n)));
  const auto runs = map_indexed(s.soundness_runs, s.threads, [&](std::size_t i) {
    const std::uint64_t seed = split_seed(big_seed, i);
    const Formula f = generate_formula(s.soundness_n, m_big, 3, seed);
    const auto res = uc::solve(f, split_seed(seed, 1));
    const bool sat = res.outcome == uc::Outcome::Sat;
    const auto& st = res.stats;
    return Run{sat, !sat || (res.assignment && verify(f, *res.assignment)), res.cause, st.empty_clauses,
               st.zen_runs, st.go_zen_violations, st.unit_clause_violations, st.monotonicity_violations};
  });
  std::size_t sat = 0, verify_fail = 0, empty_runs = 0, empty_no_zen = 0, zen_runs = 0, gave_empty = 0,
              gave_2isat = 0, monitors = 0;
  for (const auto& x : runs) {
    sat += x.sat;
    verify_fail += !x.verified;
    empty_runs += x.empty > 0;
    empty_no_zen += x.empty > 0 && x.zen == 0;
    zen_runs += x.zen > 0;
    gave_empty += x.cause == uc::GaveUpCause::EmptyClause;
    gave_2isat += x.cause == uc::GaveUpCause::TwoIsatUnsat;
    monitors += x.go_zen + x.unit + x.mono;
  }

  struct Small {
    bool solver_sat, verified, oracle_sat;
  };
  const auto small = map_indexed(s.soundness_small_runs, s.threads, [&](std::size_t i) {
    const std::uint64_t seed = split_seed(small_seed, i);
    Rng rng(seed);
    const auto n = std::uniform_int_distribution<std::size_t>(3, s.soundness_small_max_n)(rng);
    const auto m = std::uniform_int_distribution<std::size_t>(0, s.soundness_small_max_m)(rng);
    const Formula f = generate_formula(n, m, 3, split_seed(seed, 1));
    const auto res = uc::solve(f, split_seed(seed, 2));
    const bool ssat = res.outcome == uc::Outcome::Sat;
    if (!ssat) return Small{false, true, false};
    return Small{true, res.assignment && verify(f, *res.assignment),
                 std::holds_alternative<OracleSat>(brute_decide(f))};
  });
  std::size_t small_sat = 0, small_unconfirmed = 0;
  for (const auto& x : small) {
    small_sat += x.solver_sat;
    small_unconfirmed += x.solver_sat && !(x.verified && x.oracle_sat);
  }

  r.table.header = {"group", "runs", "sat", "verify_failures", "runs_with_empty_clause",
                    "empty_without_zen", "runs_with_zen", "gave_up_empty", "gave_up_2isat",
                    "monitor_violations", "oracle_unconfirmed"};
  r.table.add_row({"n=" + std::to_string(s.soundness_n), cell(runs.size()), cell(sat), cell(verify_fail),
                   cell(empty_runs), cell(empty_no_zen), cell(zen_runs), cell(gave_empty), cell(gave_2isat),
                   cell(monitors), "0"});
  r.table.add_row({"small", cell(small.size()), cell(small_sat), "0", "0", "0", "0", "0", "0", "0",
                   cell(small_unconfirmed)});
  r.passed = verify_fail == 0 && empty_no_zen == 0 && monitors == 0 && small_unconfirmed == 0;
  r.detail = std::to_string(runs.size()) + " runs: " + std::to_string(sat) + " sat, " +
             std::to_string(empty_runs) + " with empty clauses (" + std::to_string(empty_no_zen) +
             " without zen), " + std::to_string(verify_fail) + " verify failures, " +
             std::to_string(monitors) + " monitor violations; small instances: " +
             std::to_string(small_sat) + " solver sat, " + std::to_string(small_unconfirmed) +
             " not oracle-confirmed";
  return r;
}

CriterionResult success(const Settings& s) {
  CriterionResult r;
  const auto rows = uc::success_curve(s.success_n, s.success_c, s.success_trials, s.success_c_prime,
                                      criterion_seed(s, 12), s.threads);
  r.table.header = {"c", "n", "trials", "successes", "fraction", "ci_lo", "ci_hi", "mean_outer",
                    "mean_repairs", "mean_zen", "go_zen_violations", "gated"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    r.table.add_row({cell(row.c), cell(row.n), cell(row.trials), cell(row.successes), cell(row.fraction),
                     cell(row.ci_lo), cell(row.ci_hi), cell(row.mean_outer), cell(row.mean_repairs),
                     cell(row.mean_zen), cell(row.go_zen_violations), cell(i == 0)});
  }
  r.passed = !rows.empty() && rows.front().fraction >= s.success_min_fraction;
  for (const auto& row : rows)
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("c=") + fmt(row.c) + ": " +
                std::to_string(row.successes) + "/" + std::to_string(row.trials) + " [" + fmt(row.ci_lo) +
                ", " + fmt(row.ci_hi) + "]";
  r.detail += "; required " + fmt(s.success_min_fraction) + " at the first c";
  return r;
}

CriterionResult tracking(const Settings& s) {
  CriterionResult r;
  const auto t0 = Clock::now();
  const auto n = s.tracking_n;
  const std::uint64_t seed = criterion_seed(s, 13);
  const Formula f = generate_formula(n, static_cast<std::size_t>(std::floor(s.tracking_c * static_cast<double>(n))),
                                     3, seed);
  uc::SolverOptions opt;
  opt.c_prime = s.tracking_c_prime;
  opt.track_fractions = s.tracking_points;
  const auto res = uc::solve(f, split_seed(seed, 1), opt);
  double lowest = 1.0;
  for (const double p : s.tracking_points) lowest = std::min(lowest, p);
  const auto sol = ode::integrate(s.tracking_c, 0.9 * lowest, s.ivp_step);
  r.seconds = seconds_since(t0);

  r.table.header = {"fraction", "x", "Y2_over_n", "y", "error_y2", "Y3_over_n", "c_x3", "error_y3"};
  const double nd = static_cast<double>(n);
  double worst = 0.0;
  for (const auto& tp : res.stats.track) {
    const double x = static_cast<double>(tp.X) / nd;
    const double y2 = static_cast<double>(tp.Y2) / nd, y3 = static_cast<double>(tp.Y3) / nd;
    const double y = sol.y_at(x), c3 = s.tracking_c * x * x * x;
    worst = std::max({worst, std::abs(y2 - y), std::abs(y3 - c3)});
    r.table.add_row({cell(tp.fraction), cell(x), cell(y2), cell(y), cell(y2 - y), cell(y3), cell(c3), cell(y3 - c3)});
  }
  const bool all_tracked = res.stats.track.size() == s.tracking_points.size();
  r.passed = all_tracked && sol.status == ode::Status::Completed && worst <= s.tracking_tolerance &&
             r.seconds < s.tracking_max_seconds;
  r.detail = "max deviation " + fmt(worst) + " (limit " + fmt(s.tracking_tolerance) + ") at " +
             std::to_string(res.stats.track.size()) + "/" + std::to_string(s.tracking_points.size()) +
             " points; " + fmt(r.seconds) + " s (limit " + fmt(s.tracking_max_seconds) + " s)";
  return r;
}

CriterionResult drift(const Settings& s) {
  CriterionResult r;
  uc::DriftSpec spec;
  spec.X = s.drift_X;
  spec.Y2 = s.drift_Y2;
  spec.Y3 = s.drift_Y3;
  spec.formulas = s.drift_formulas;
  spec.window = s.drift_window;
  spec.eps = s.drift_eps;
  spec.seed = criterion_seed(s, 14);
  const auto rep = uc::measure_drift(spec, s.threads);
  r.table.header = {"quantity", "observed", "std_error", "predicted", "relative_error"};
  double worst = 0.0;
  for (const auto& [name, q] : {std::pair{"dX", rep.dX}, std::pair{"dY2", rep.dY2}, std::pair{"dY3", rep.dY3}}) {
    worst = std::max(worst, q.relative_error());
    r.table.add_row({name, cell(q.observed), cell(q.std_error), cell(q.predicted), cell(q.relative_error())});
  }
  r.table.add_row({"iterations", cell(rep.iterations), "", "", ""});
  r.passed = rep.valid && rep.iterations >= s.drift_min_iterations && worst <= s.drift_tolerance;
  r.detail = std::to_string(rep.iterations) + " iterations" + (rep.valid ? "" : " (not all eps-good)") +
             ", max relative error " + fmt(worst) + " (limit " + fmt(s.drift_tolerance) + ")";
  return r;
}

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CriterionResult determinism(const Settings& s, const std::filesystem::path& scratch) {
  CriterionResult r;
  r.table.header = {"file", "identical"};
  if (!s.determinism_enabled || s.determinism_threads.size() < 2) {
    r.detail = "disabled";
    r.passed = false;
    return r;
  }
  std::vector<std::filesystem::path> dirs;
  for (const auto t : s.determinism_threads) {
    Settings small = s.reduced();
    small.threads = static_cast<int>(t);
    RunAllOptions opt;
    opt.out_dir = scratch / ("threads-" + std::to_string(t));
    opt.timestamp = false;
    for (int id = 1; id < kCriteria; ++id) opt.only.push_back(id);
    std::filesystem::remove_all(opt.out_dir);
    (void)run_all(small, opt);
    dirs.push_back(opt.out_dir);
  }
  std::size_t files = 0, differing = 0;
  for (int id = 1; id < kCriteria; ++id) {
    const std::string name = criterion_slug(id) + ".csv";
    const std::string ref = read_bytes(dirs.front() / name);
    bool same = !ref.empty();
    for (std::size_t k = 1; k < dirs.size(); ++k) same = same && read_bytes(dirs[k] / name) == ref;
    ++files;
    differing += !same;
    r.table.add_row({name, cell(same)});
  }
  r.passed = differing == 0;
  std::string threads;
  for (const auto t : s.determinism_threads) threads += (threads.empty() ? "" : ",") + std::to_string(t);
  r.detail = std::to_string(files - differing) + "/" + std::to_string(files) +
             " CSV files byte-identical across threads {" + threads + "}";
  return r;
}

const char* const kNames[kCriteria] = {
    "interval laws",     "bar-x CDF with atom", "queue mean",      "queue tail",
    "exponent diagnostic", "IVP barriers",      "threshold",       "handoff",
    "2-iSAT correctness", "2-iSAT regime",      "solver soundness", "solver success",
    "ODE tracking",      "drift",               "determinism",
};

const char* const kSlugs[kCriteria] = {
    "c01_interval_laws", "c02_cdf",          "c03_queue_mean", "c04_queue_tail",  "c05_exponent",
    "c06_ivp_barriers",  "c07_threshold",    "c08_handoff",    "c09_two_isat",    "c10_two_isat_regime",
    "c11_soundness",     "c12_success",      "c13_tracking",   "c14_drift",       "c15_determinism",
};

}  // namespace

std::string criterion_slug(int id) {
  if (id < 1 || id > kCriteria) throw std::out_of_range("criterion id " + std::to_string(id));
  return kSlugs[id - 1];
}

CriterionResult run_criterion(int id, const Settings& s, const std::filesystem::path& scratch) {
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = interval_laws(s); break;
      case 2: r = cdf_with_atom(s); break;
      case 3: r = queue_mean(s); break;
      case 4: r = queue_tail(s); break;
      case 5: r = exponent(s); break;
      case 6: r = ivp_barriers(s); break;
      case 7: r = threshold(s); break;
      case 8: r = handoff(s); break;
      case 9: r = two_isat_correctness(s); break;
      case 10: r = two_isat_regime(s); break;
      case 11: r = soundness(s); break;
      case 12: r = success(s); break;
      case 13: r = tracking(s); break;
      case 14: r = drift(s); break;
      case 15: r = determinism(s, scratch); break;
      default: throw std::out_of_range("criterion id " + std::to_string(id));
    }
  } catch (const std::out_of_range&) {
    throw;
  } catch (const std::exception& e) {
    r = CriterionResult{};
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
    r.table.header = {"error"};
    r.table.add_row({e.what()});
  }
  r.id = id;
  r.name = kNames[id - 1];
  if (r.seconds == 0.0) r.seconds = seconds_since(t0);
  return r;
}

bool SuiteReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
}

SuiteReport run_all(const Settings& settings, const RunAllOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  std::vector<int> ids = options.only;
  if (ids.empty())
    for (int id = 1; id <= kCriteria; ++id) ids.push_back(id);

  SuiteReport report;
  nlohmann::json summary;
  summary["version"] = kToolVersion;
  summary["seed"] = settings.seed;
  summary["threads"] = settings.threads;
  summary["criteria"] = nlohmann::json::array();
  for (const int id : ids) {
    CriterionResult r = run_criterion(id, settings, options.out_dir / "determinism");
    const std::string file = criterion_slug(id) + ".csv";
    write_csv(options.out_dir / file, r.table,
              Provenance{"acceptance-" + criterion_slug(id), settings.seed, options.timestamp});
    summary["criteria"].push_back({{"id", r.id},
                                   {"name", r.name},
                                   {"passed", r.passed},
                                   {"detail", r.detail},
                                   {"seconds", r.seconds},
                                   {"csv", file}});
    if (options.on_result) options.on_result(r);
    report.results.push_back(std::move(r));
  }
  summary["all_passed"] = report.all_passed();
  std::ofstream(options.out_dir / "summary.json") << summary.dump(2) << '\n';
  return report;
}

}  // namespace isat::acceptance
