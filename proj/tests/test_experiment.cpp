#include <filesystem>

#include "doctest.h"
#include "swiftnav/errors.hpp"
#include "swiftnav/experiment.hpp"

using namespace swiftnav;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kText{"algorithm"};

// Cell text of every column except the timing ones.
std::vector<std::vector<std::string>> numeric_part(const fs::path& path) {
  const auto table = read_csv(path, kText);
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (table.header[c] != "elapsed_s" && !table.header[c].ends_with("wall_s")) keep.push_back(c);
  std::vector<std::vector<std::string>> out;
  for (const auto& row : table.text) {
    std::vector<std::string> r;
    for (auto c : keep) r.push_back(row[c]);
    out.push_back(std::move(r));
  }
  return out;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("single seed matches a direct run") {
  const auto c = parse_config("problem=levy, dims=6, k=8, iterations=50, seeds=[5]");
  const auto result = run_experiment(c);
  REQUIRE(result.traces.size() == 1);
  const auto objective = make_objective("levy", c.objective_options());
  const auto direct = run_swiftnav(*objective, c.anneal_config(), 5);
  CHECK(result.traces[0].best_value == direct.best_value);
  CHECK(result.traces[0].best_point == direct.best_point);
  CHECK(result.f_star == 0.0);
  CHECK(result.algorithms[0].runs == 1);
}

TEST_CASE("output does not depend on the worker count") {
  auto c = parse_config("problem=ackley, dims=20, k=10, iterations=40, seeds=4, algorithm=both");
  c.workers = 1;
  const auto one = fresh_dir("swiftnav_exp_w1");
  write_experiment(run_experiment(c), c, one);
  c.workers = 8;
  const auto eight = fresh_dir("swiftnav_exp_w8");
  write_experiment(run_experiment(c), c, eight);

  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(one)) {
    const auto name = entry.path().filename();
    INFO(name.string());
    REQUIRE(fs::exists(eight / name));
    CHECK(numeric_part(one / name) == numeric_part(eight / name));
    ++files;
  }
  // 4 seeds x 2 algorithms, aggregate and regret per algorithm, summary, comparison.
  CHECK(files == 8 + 4 + 2);
  fs::remove_all(one);
  fs::remove_all(eight);
}

TEST_CASE("seeds are independent of their neighbours") {
  const auto both = run_experiment(parse_config("problem=levy, dims=5, k=6, iterations=30, seeds=[3, 11]"));
  const auto alone = run_experiment(parse_config("problem=levy, dims=5, k=6, iterations=30, seeds=[11]"));
  CHECK(both.traces[1].best_value == alone.traces[0].best_value);
  CHECK(both.traces[1].best_point == alone.traces[0].best_point);
  CHECK(both.traces[0].best_point != both.traces[1].best_point);
}

TEST_CASE("comparison has one row per algorithm") {
  const auto c = parse_config("problem=quartic, k=5, iterations=60, seeds=3, algorithm=both");
  const auto result = run_experiment(c);
  REQUIRE(result.algorithms.size() == 2);
  CHECK(result.algorithms[0].algorithm == "swiftnav");
  CHECK(result.algorithms[1].algorithm == "mh");
  const auto table = parse_csv(format_comparison(result), kText);
  CHECK(table.rows.size() == 2);
  CHECK(table.text[1][0] == "mh");
  CHECK(table.rows[0][table.column("runs")] == 3.0);
  CHECK(result.seeds.size() == 6);
}

TEST_CASE("burn-in trims aggregates, traces stay whole") {
  auto c = parse_config("problem=ackley, dims=3, k=5, iterations=30, burn_in=10");
  const auto dir = fresh_dir("swiftnav_exp_burn");
  write_experiment(run_experiment(c), c, dir);
  CHECK(read_csv(dir / "swiftnav_seed0.csv").rows.size() == 31);
  const auto agg = read_csv(dir / "swiftnav_aggregate.csv");
  CHECK(agg.rows.size() == 21);
  CHECK(agg.rows.front()[0] == 10.0);
  fs::remove_all(dir);
}

TEST_CASE("unknown optimum writes no regret file") {
  const auto asset = std::string(SWIFTNAV_ASSET_DIR) + "/truss1.dat-s";
  auto c = parse_config("problem=sdp:" + asset + ", k=4, h=0.4, domain=[-4,4], iterations=5");
  const auto result = run_experiment(c);
  CHECK_FALSE(result.f_star.has_value());
  const auto dir = fresh_dir("swiftnav_exp_sdp");
  write_experiment(result, c, dir);
  CHECK_FALSE(fs::exists(dir / "swiftnav_regret.csv"));
  CHECK(std::isnan(read_csv(dir / "summary.csv", kText).rows[0][3]));
  fs::remove_all(dir);
}

TEST_CASE("failures surface") {
  CHECK_THROWS_AS(run_experiment(parse_config("problem=sdp:/nonexistent.dat-s")), IoError);
  CHECK_THROWS_AS(run_experiment(parse_config("k=0")), ConfigError);
}
