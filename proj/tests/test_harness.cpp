#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "isat/acceptance.hpp"
#include "isat/config.hpp"
#include "isat/csv.hpp"
#include "isat/stats.hpp"
#include "json.hpp"

using namespace isat;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

Config parse(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("isat-test-" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("config files") {
  const Config c = parse("# comment\nseed = 7\n; other\n[queue]\nruns = 100\nlist = 1, 2,3\nflag = yes\n");
  CHECK(c.get_u64("seed", 0) == 7);
  CHECK(c.get_u64("queue.runs", 0) == 100);
  CHECK(c.get_u64s("queue.list", {}) == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(c.get_bool("queue.flag", false));
  CHECK(c.get_double("missing", 2.5) == 2.5);
  CHECK_THROWS_AS(parse("[bad\n"), ConfigError);
  CHECK_THROWS_AS(parse("novalue\n"), ConfigError);
  CHECK_THROWS_AS(parse("x = abc\n").get_double("x", 0), ConfigError);
  CHECK_THROWS_AS(parse("x = maybe\n").get_bool("x", false), ConfigError);
  CHECK_THROWS_AS(c.require_known({"seed"}), ConfigError);
  CHECK_NOTHROW(c.require_known({"seed", "queue.runs", "queue.list", "queue.flag"}));
}

TEST_CASE("csv writing") {
  CsvTable t;
  t.header = {"name", "value"};
  t.add_row({"plain", cell(0.5)});
  t.add_row({"a,b", cell(std::uint64_t{3})});
  t.add_row({"say \"hi\"", cell(true)});
  CHECK_THROWS_AS(t.add_row({"short"}), std::invalid_argument);
  std::ostringstream out;
  write_csv(out, t, {"probe", 11, false});
  CHECK(out.str() ==
        "# isat 0.1.0 command=probe seed=11\n"
        "name,value\n"
        "plain,0.5\n"
        "\"a,b\",3\n"
        "\"say \"\"hi\"\"\",true\n");
  CHECK(provenance_line({"x", 1, true}).find(" timestamp=") != std::string::npos);
  CHECK(cell(0.1 + 0.2) == "0.30000000000000004");
  CHECK(cell(-2) == "-2");
}

TEST_CASE("statistics helpers") {
  const auto w = stats::wilson(45, 50);
  CHECK(w.fraction == 0.9);
  CHECK(w.ci_lo == Approx(0.7864).epsilon(1e-3));
  CHECK(w.ci_hi == Approx(0.9565).epsilon(1e-3));
  CHECK(stats::wilson(0, 0).fraction == 0.0);

  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7}, ones(4, 1.0);
  const auto fit = stats::fit_line(x, y, ones);
  CHECK(fit.slope == Approx(2.0));
  CHECK(fit.intercept == Approx(1.0));

  const auto pmf = stats::binomial_pmf(4, 0.5);
  REQUIRE(pmf.size() == 5);
  CHECK(pmf[0] == Approx(1.0 / 16));
  CHECK(pmf[2] == Approx(6.0 / 16));

  // Observations that exactly follow the pmf give a zero statistic.
  std::vector<std::size_t> obs;
  for (std::size_t k = 0; k <= 4; ++k)
    for (int i = 0; i < static_cast<int>(pmf[k] * 1600); ++i) obs.push_back(k);
  const auto chi = stats::chi_square_gof(obs, pmf);
  CHECK(chi.statistic == Approx(0.0).margin(1e-9));
  CHECK(chi.p_value == Approx(1.0));
  std::vector<std::size_t> skewed(1600, 0);
  CHECK(stats::chi_square_gof(skewed, pmf).p_value < 1e-10);

  const std::vector<double> v{1, 2, 3, 4};
  const auto ms = stats::mean_se(v);
  CHECK(ms.mean == 2.5);
  CHECK(ms.std_error == Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}

TEST_CASE("acceptance settings from config") {
  using acceptance::Settings;
  const Settings s = Settings::from_config(parse("seed = 5\n[queue.mean]\nruns = 1000\n[determinism]\nthreads = 1, 2\n"));
  CHECK(s.seed == 5);
  CHECK(s.queue_mean_runs == 1000);
  CHECK(s.determinism_threads == std::vector<std::uint64_t>{1, 2});
  CHECK_THROWS_AS(Settings::from_config(parse("sede = 5\n")), ConfigError);
  for (const auto& key : Settings::known_keys()) CHECK(key.find(' ') == std::string::npos);
  const Settings r = Settings{}.reduced();
  CHECK_FALSE(r.determinism_enabled);
  CHECK(r.queue_mean_runs < Settings{}.queue_mean_runs);
  for (int id = 1; id <= acceptance::kCriteria; ++id) CHECK_FALSE(acceptance::criterion_slug(id).empty());
}

TEST_CASE("reduced suite writes reports and is thread-count invariant") {
  acceptance::Settings s = acceptance::Settings{}.reduced();
  acceptance::RunAllOptions o;
  o.timestamp = false;
  o.only = {1, 3, 5, 6, 9, 10};

  s.threads = 1;
  o.out_dir = fresh_dir("one");
  const auto a = acceptance::run_all(s, o);
  s.threads = 4;
  o.out_dir = fresh_dir("four");
  const auto b = acceptance::run_all(s, o);

  REQUIRE(a.results.size() == o.only.size());
  CHECK(a.all_passed());
  for (const auto& r : a.results) {
    const std::string name = acceptance::criterion_slug(r.id) + ".csv";
    const auto one = slurp(fs::temp_directory_path() / "isat-test-one" / name);
    const auto four = slurp(fs::temp_directory_path() / "isat-test-four" / name);
    CHECK_FALSE(one.empty());
    CHECK(one == four);
  }
  const auto summary = nlohmann::json::parse(slurp(fs::temp_directory_path() / "isat-test-one" / "summary.json"));
  CHECK(summary["criteria"].size() == o.only.size());
  CHECK(summary["all_passed"].get<bool>() == a.all_passed());
  CHECK(summary["seed"].get<std::uint64_t>() == s.seed);
  (void)b;
}
