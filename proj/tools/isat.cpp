#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "isat/acceptance.hpp"
#include "isat/branching_queue.hpp"
#include "isat/config.hpp"
#include "isat/csv.hpp"
#include "isat/experiments.hpp"
#include "isat/formula_io.hpp"
#include "isat/interval_math.hpp"
#include "isat/ode_threshold.hpp"
#include "isat/oracle.hpp"
#include "isat/two_isat.hpp"
#include "isat/uc_solver.hpp"

using namespace isat;

namespace {

constexpr int kExitGaveUp = 10;

struct Global {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  bool no_timestamp = false;
};

void emit(const Global& g, const std::string& command, const CsvTable& table) {
  const Provenance p{command, g.seed, !g.no_timestamp};
  if (g.out.empty() || g.out == "-") write_csv(std::cout, table, p);
  else write_csv(std::filesystem::path(g.out), table, p);
}

// Formula source shared by solve/oracle/decide2: a file, or a fresh random instance.
struct FormulaSource {
  std::string input;
  std::size_t n = 0;
  double c = 0.0;
  std::size_t k = 3;

  void add(CLI::App* cmd, std::size_t default_k) {
    k = default_k;
    cmd->add_option("-i,--input", input, "formula file");
    cmd->add_option("--n", n, "variables of a generated instance");
    cmd->add_option("--c", c, "clause density of a generated instance");
  }
  Formula load(std::uint64_t seed) const {
    if (!input.empty()) return read_formula(input);
    if (n == 0) throw CLI::ValidationError("give --input or --n/--c");
    return generate_formula(n, static_cast<std::size_t>(std::floor(c * static_cast<double>(n))), k, seed);
  }
};

void print_assignment(std::ostream& out, const Assignment& a) { write_assignment(out, a); }

int cmd_gen(const Global& g, std::size_t n, std::size_t m, double c, std::size_t k) {
  if (m == 0 && c > 0.0) m = static_cast<std::size_t>(std::floor(c * static_cast<double>(n)));
  const Formula f = generate_formula(n, m, k, g.seed);
  if (g.out.empty() || g.out == "-") write_formula(std::cout, f);
  else write_formula(f, g.out);
  return 0;
}

int cmd_solve(const Global& g, const FormulaSource& src, double c_prime, const std::string& stats_out) {
  const Formula f = src.load(g.seed);
  uc::SolverOptions opt;
  opt.c_prime = c_prime;
  const auto res = uc::solve(f, split_seed(g.seed, 1), opt);
  const auto& st = res.stats;
  if (!stats_out.empty()) {
    nlohmann::json j;
    j["outcome"] = res.outcome == uc::Outcome::Sat ? "sat" : "gave_up";
    j["cause"] = res.cause == uc::GaveUpCause::None          ? "none"
                 : res.cause == uc::GaveUpCause::EmptyClause ? "empty_clause"
                                                             : "two_isat_unsat";
    j["outer_iterations"] = st.outer_iterations;
    j["inner_iterations_phase1"] = st.inner_iterations_phase1;
    j["inner_iterations_phase2"] = st.inner_iterations_phase2;
    j["repairs"] = st.repairs;
    j["zen_runs"] = st.zen_runs;
    for (std::size_t i = 0; i < uc::kZenCauses; ++i)
      j["zen_events"][std::string(uc::to_string(static_cast<uc::ZenCause>(i)))] = st.zen_events[i];
    j["empty_clauses"] = st.empty_clauses;
    j["go_zen_violations"] = st.go_zen_violations;
    j["unit_clause_violations"] = st.unit_clause_violations;
    j["monotonicity_violations"] = st.monotonicity_violations;
    j["final"] = {{"X", st.final_X}, {"Y2", st.final_Y2}, {"Y3", st.final_Y3}};
    std::ofstream(stats_out) << j.dump(2) << '\n';
  }
  if (res.outcome != uc::Outcome::Sat) {
    std::cout << "s GAVE_UP\n";
    return kExitGaveUp;
  }
  std::cout << "s SAT\n";
  if (!g.out.empty()) {
    std::ofstream out(g.out);
    print_assignment(out, *res.assignment);
  } else {
    print_assignment(std::cout, *res.assignment);
  }
  return 0;
}

int cmd_oracle(const Global& g, const FormulaSource& src) {
  const Formula f = src.load(g.seed);
  const auto res = brute_decide(f);
  if (const auto* sat = std::get_if<OracleSat>(&res)) {
    std::cout << "s SAT\n";
    print_assignment(std::cout, sat->assignment);
    return 0;
  }
  std::cout << "s UNSAT\n";
  return kExitGaveUp;
}

int cmd_decide2(const Global& g, const FormulaSource& src) {
  const Formula f = src.load(g.seed);
  const auto res = decide(f);
  if (const auto* sat = std::get_if<TwoSat>(&res)) {
    std::cout << "s SAT\n";
    print_assignment(std::cout, sat->assignment);
    return 0;
  }
  const auto& u = std::get<TwoUnsat>(res);
  std::cout << "s UNSAT\nc literal x" << (u.literal.var + 1) << " in [" << format_double(u.literal.sign.lo)
            << ", " << format_double(u.literal.sign.hi) << "] shares component " << u.component
            << " with its negation\n";
  return kExitGaveUp;
}

int cmd_phase2(const Global& g, std::size_t n, const std::vector<double>& cs, std::size_t trials) {
  CsvTable t;
  t.header = {"c", "n", "trials", "satisfiable", "fraction", "ci_lo", "ci_hi"};
  for (const auto& r : phase_experiment(n, cs, trials, g.seed, g.threads))
    t.add_row({cell(r.c), cell(r.n), cell(r.trials), cell(r.satisfiable), cell(r.fraction), cell(r.ci_lo),
               cell(r.ci_hi)});
  emit(g, "phase2", t);
  return 0;
}

int cmd_probe(const Global& g, std::uint64_t samples) {
  CsvTable t;
  t.header = {"quantity", "closed_form", "estimate", "std_error", "samples"};
  for (const auto& r : probe_table(samples, g.seed, g.threads))
    t.add_row({r.quantity, cell(r.closed_form), cell(r.estimate.mean), cell(r.estimate.std_error),
               cell(r.estimate.samples)});
  t.add_row({"cdf_sup_distance", "0", cell(barx_cdf_sup_distance(samples, split_seed(g.seed, 1))), "",
             cell(samples)});
  emit(g, "probe", t);
  return 0;
}

int cmd_queue(const Global& g, std::uint64_t a, std::uint64_t m, std::uint64_t n, std::size_t runs,
              const std::string& mode, std::uint64_t alpha_max) {
  CsvTable t;
  if (mode == "mean") {
    const auto r = queue::mean_experiment(a, m, n, runs, g.seed, g.threads);
    t.header = {"a", "m", "n", "lambda_B", "closed_form", "mean", "std_error", "runs"};
    t.add_row({cell(r.a), cell(r.m), cell(r.n), cell(r.lambda_B), cell(r.closed_form), cell(r.mean),
               cell(r.std_error), cell(r.runs)});
  } else if (mode == "tail") {
    std::vector<std::uint64_t> grid;
    for (std::uint64_t x = 1; x <= alpha_max; ++x) grid.push_back(x);
    const auto r = queue::tail_estimate(a, m, n, grid, runs, g.seed, g.threads);
    t.header = {"alpha", "exceed", "probability"};
    for (const auto& row : r.rows) t.add_row({cell(row.alpha), cell(row.exceed), cell(row.probability)});
    std::cerr << "slope " << format_double(r.slope) << " over " << r.fit_points << " points\n";
  } else {
    queue::QueueConfig cfg{a, queue::BinomialRandomP{m, n}, queue::kDefaultStepCap, true};
    t.header = {"run", "j", "Q"};
    for (std::size_t i = 0; i < runs; ++i) {
      const auto r = queue::simulate(cfg, split_seed(g.seed, i));
      for (std::size_t j = 0; j < r.trace.size(); ++j) t.add_row({cell(i), cell(j), cell(r.trace[j])});
    }
  }
  emit(g, "queue-sim", t);
  return 0;
}

CsvTable trajectory_table(const ode::Solution& sol, std::size_t stride) {
  CsvTable t;
  t.header = {"x", "y2", "y3", "t"};
  for (std::size_t i = 0; i < sol.x.size(); ++i)
    if (i % stride == 0 || i + 1 == sol.x.size())
      t.add_row({cell(sol.x[i]), cell(sol.y[i]), cell(sol.y3(i)), std::isnan(sol.t[i]) ? "" : cell(sol.t[i])});
  return t;
}

int cmd_ivp(const Global& g, double c, double x_stop, double step, std::size_t stride) {
  const auto sol = ode::integrate(c, x_stop, step);
  if (sol.status == ode::Status::HitSingularity)
    std::cerr << "singular line reached at x = " << format_double(sol.x_end) << '\n';
  emit(g, "ivp", trajectory_table(sol, stride));
  return sol.status == ode::Status::Completed ? 0 : kExitGaveUp;
}

int cmd_threshold(const Global& g, double eps, double tol, double lo, double hi, double step,
                  const std::string& trajectory) {
  const double c = ode::find_threshold(eps, lo, hi, tol, step);
  CsvTable t;
  t.header = {"eps", "tol", "threshold"};
  t.add_row({cell(eps), cell(tol), cell(c)});
  emit(g, "threshold", t);
  if (!trajectory.empty())
    write_csv(std::filesystem::path(trajectory), trajectory_table(ode::integrate(c, 1.0 / 3.0, step), 100),
              Provenance{"threshold", g.seed, !g.no_timestamp});
  return 0;
}

int cmd_drift(const Global& g, uc::DriftSpec spec) {
  spec.seed = g.seed;
  const auto r = uc::measure_drift(spec, g.threads);
  CsvTable t;
  t.header = {"quantity", "observed", "std_error", "predicted", "relative_error", "iterations", "eps_good"};
  for (const auto& [name, q] : {std::pair{"dX", r.dX}, std::pair{"dY2", r.dY2}, std::pair{"dY3", r.dY3}})
    t.add_row({name, cell(q.observed), cell(q.std_error), cell(q.predicted), cell(q.relative_error()),
               cell(r.iterations), cell(r.valid)});
  emit(g, "drift", t);
  return 0;
}

int cmd_success(const Global& g, std::size_t n, const std::vector<double>& cs, std::size_t trials,
                double c_prime) {
  CsvTable t;
  t.header = {"c", "n", "trials", "success", "ci_lo", "ci_hi", "mean_outer", "mean_repairs", "mean_zen"};
  for (const auto& r : uc::success_curve(n, cs, trials, c_prime, g.seed, g.threads))
    t.add_row({cell(r.c), cell(r.n), cell(r.trials), cell(r.fraction), cell(r.ci_lo), cell(r.ci_hi),
               cell(r.mean_outer), cell(r.mean_repairs), cell(r.mean_zen)});
  emit(g, "success-curve", t);
  return 0;
}

int cmd_run_all(const Global& g, const std::string& config_path, bool seed_given, bool threads_given,
                const std::vector<int>& only) {
  Config cfg;
  if (!config_path.empty()) cfg = Config::load(config_path);
  auto settings = acceptance::Settings::from_config(cfg);
  if (seed_given) settings.seed = g.seed;
  if (threads_given) settings.threads = g.threads;
  acceptance::RunAllOptions opt;
  opt.out_dir = g.out.empty() ? "isat-report" : g.out;
  opt.timestamp = !g.no_timestamp;
  opt.only = only;
  opt.on_result = [](const acceptance::CriterionResult& r) {
    std::cout << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << '\n'
              << std::flush;
  };
  const auto report = acceptance::run_all(settings, opt);
  std::cout << "summary written to " << (opt.out_dir / "summary.json").string() << '\n';
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random 3-iSAT solver and experiment harness"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  auto* seed_opt = app.add_option("--seed", g.seed, "master seed");
  auto* threads_opt = app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output file (directory for run-all)");
  app.add_flag("--no-timestamp", g.no_timestamp, "omit the timestamp from CSV provenance lines");

  int code = 0;

  std::size_t gen_n = 100, gen_m = 0, gen_k = 3;
  double gen_c = 0.0;
  auto* gen = app.add_subcommand("gen", "write a random k-iSAT formula");
  gen->add_option("--n", gen_n, "variables")->required();
  gen->add_option("--m", gen_m, "clauses");
  gen->add_option("--c", gen_c, "clause density, used when --m is absent");
  gen->add_option("--k", gen_k, "literals per clause")->check(CLI::Range(1, 3));
  gen->callback([&] { code = cmd_gen(g, gen_n, gen_m, gen_c, gen_k); });

  FormulaSource solve_src;
  double c_prime = uc::kDefaultCPrime;
  std::string stats_out;
  auto* solve = app.add_subcommand("solve", "run the unit-clause solver with repair (exit 10 on give-up)");
  solve_src.add(solve, 3);
  solve->add_option("--c-prime", c_prime, "outer loop stops once Y2 + Y3 <= c' X");
  solve->add_option("--stats-out", stats_out, "JSON run statistics");
  solve->callback([&] { code = cmd_solve(g, solve_src, c_prime, stats_out); });

  FormulaSource oracle_src;
  auto* oracle = app.add_subcommand("oracle", "exhaustive satisfiability check (exit 10 on UNSAT)");
  oracle_src.add(oracle, 3);
  oracle->callback([&] { code = cmd_oracle(g, oracle_src); });

  FormulaSource d2_src;
  auto* d2 = app.add_subcommand("decide2", "exact 2-iSAT decision (exit 10 on UNSAT)");
  d2_src.add(d2, 2);
  d2->callback([&] { code = cmd_decide2(g, d2_src); });

  std::size_t p2_n = 10000, p2_trials = 100;
  std::vector<double> p2_c{1.0, 1.2, 1.4, 1.5, 1.6};
  auto* p2 = app.add_subcommand("phase2", "satisfiable fraction of random 2-iSAT");
  p2->add_option("--n", p2_n);
  p2->add_option("--c", p2_c, "densities")->delimiter(',');
  p2->add_option("--trials", p2_trials);
  p2->callback([&] { code = cmd_phase2(g, p2_n, p2_c, p2_trials); });

  std::uint64_t probe_samples = 1'000'000;
  auto* probe = app.add_subcommand("probe", "Monte-Carlo estimates of the random-interval laws");
  probe->add_option("--samples", probe_samples);
  probe->callback([&] { code = cmd_probe(g, probe_samples); });

  std::uint64_t q_a = 1, q_m = 6000, q_n = 13000, q_alpha = 40;
  std::size_t q_runs = 100000;
  std::string q_mode = "mean";
  auto* qs = app.add_subcommand("queue-sim", "branching queue with B ~ Bin(m, 2P/n)");
  qs->add_option("--a", q_a, "initial queue length");
  qs->add_option("--m", q_m, "binomial trials per step");
  qs->add_option("--n", q_n, "scale");
  qs->add_option("--runs", q_runs);
  qs->add_option("--mode", q_mode)->check(CLI::IsMember({"mean", "tail", "trace"}));
  qs->add_option("--alpha-max", q_alpha, "largest alpha of the tail grid");
  qs->callback([&] { code = cmd_queue(g, q_a, q_m, q_n, q_runs, q_mode, q_alpha); });

  double ivp_c = 2.0, ivp_stop = 1.0 / 3.0, ivp_step = ode::kDefaultStep;
  std::size_t ivp_stride = 100;
  auto* ivp = app.add_subcommand("ivp", "integrate the 2-clause density ODE");
  ivp->add_option("--c", ivp_c);
  ivp->add_option("--x-stop", ivp_stop);
  ivp->add_option("--step", ivp_step);
  ivp->add_option("--stride", ivp_stride, "emit every stride-th grid point")->check(CLI::PositiveNumber);
  ivp->callback([&] { code = cmd_ivp(g, ivp_c, ivp_stop, ivp_step, ivp_stride); });

  double th_eps = 1e-3, th_tol = 1e-3, th_lo = 1.0, th_hi = 3.0, th_step = ode::kDefaultStep;
  std::string th_traj;
  auto* th = app.add_subcommand("threshold", "largest density whose trajectory stays subcritical");
  th->add_option("--eps", th_eps);
  th->add_option("--tol", th_tol);
  th->add_option("--c-lo", th_lo);
  th->add_option("--c-hi", th_hi);
  th->add_option("--step", th_step);
  th->add_option("--emit-trajectory", th_traj, "CSV of x, y2, y3, t at the threshold");
  th->callback([&] { code = cmd_threshold(g, th_eps, th_tol, th_lo, th_hi, th_step, th_traj); });

  uc::DriftSpec spec;
  auto* dr = app.add_subcommand("drift", "per-iteration drift of (X, Y2, Y3) against f, g2, g3");
  dr->add_option("--X", spec.X);
  dr->add_option("--Y2", spec.Y2);
  dr->add_option("--Y3", spec.Y3);
  dr->add_option("--formulas", spec.formulas);
  dr->add_option("--window", spec.window, "outer iterations per formula");
  dr->add_option("--eps", spec.eps);
  dr->callback([&] { code = cmd_drift(g, spec); });

  std::size_t sc_n = 10000, sc_trials = 50;
  std::vector<double> sc_c{1.0, 1.5, 2.0, 2.2, 2.3, 2.5, 3.0, 3.5};
  double sc_cp = uc::kDefaultCPrime;
  auto* sc = app.add_subcommand("success-curve", "solver success fraction against density");
  sc->add_option("--n", sc_n)->check(CLI::Range(std::size_t{100}, std::size_t{1} << 40));
  sc->add_option("--c", sc_c, "densities")->delimiter(',');
  sc->add_option("--trials", sc_trials)->check(CLI::PositiveNumber);
  sc->add_option("--c-prime", sc_cp);
  sc->callback([&] { code = cmd_success(g, sc_n, sc_c, sc_trials, sc_cp); });

  std::string config_path;
  std::vector<int> only;
  auto* ra = app.add_subcommand("run-all", "acceptance suite; writes CSVs and summary.json to --out");
  ra->add_option("--config", config_path, "key = value settings file")->check(CLI::ExistingFile);
  ra->add_option("--only", only, "criterion ids")->delimiter(',')->check(CLI::Range(1, acceptance::kCriteria));
  ra->callback([&] {
    code = cmd_run_all(g, config_path, seed_opt->count() > 0, threads_opt->count() > 0, only);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return code;
}
