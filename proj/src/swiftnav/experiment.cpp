#include "swiftnav/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>

#include "swiftnav/errors.hpp"
#include "swiftnav/report.hpp"

namespace swiftnav {
namespace {

std::vector<Algorithm> selected(AlgorithmChoice choice) {
  switch (choice) {
    case AlgorithmChoice::kSwiftNav: return {Algorithm::kSwiftNav};
    case AlgorithmChoice::kMetropolis: return {Algorithm::kMetropolisBaseline};
    case AlgorithmChoice::kBoth: return {Algorithm::kSwiftNav, Algorithm::kMetropolisBaseline};
  }
  return {};
}

double regret_or_nan(double best, const std::optional<double>& f_star) {
  return f_star ? log_regret(best, *f_star) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double median(std::vector<double> v) {
  if (v.empty()) throw InvalidArgument("median of nothing");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const ObjectivePtr objective = make_objective(config.problem, config.objective_options());
  AnnealConfig anneal = config.anneal_config();
  anneal.validate();
  domain_for(*objective, anneal);

  const auto algorithms = selected(config.algorithm);
  const std::size_t n_seeds = config.seeds.size();
  const std::size_t jobs = algorithms.size() * n_seeds;
  const int seed_workers =
      n_seeds > 1 ? static_cast<int>(std::min<std::size_t>(config.workers, jobs)) : 1;
  anneal.workers = std::max(1, config.workers / seed_workers);

  ExperimentResult result;
  result.f_star = objective->known_optimum();
  result.traces.resize(jobs);

  std::exception_ptr failure;
  std::mutex failure_mutex;
#pragma omp parallel for num_threads(seed_workers) schedule(dynamic) if (seed_workers > 1)
  for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(jobs); ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    try {
      const Algorithm algo = algorithms[j / n_seeds];
      const std::uint64_t seed = config.seeds[j % n_seeds];
      result.traces[j] = algo == Algorithm::kSwiftNav ? run_swiftnav(*objective, anneal, seed)
                                                      : run_baseline_mh(*objective, anneal, seed);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    AlgorithmSummary s;
    std::vector<double> best, regret;
    double wall = 0.0;
    for (std::size_t i = 0; i < n_seeds; ++i) {
      const RunTrace& t = result.traces[a * n_seeds + i];
      const double elapsed = t.records.back().elapsed_s;
      const double r = regret_or_nan(t.best_value, result.f_star);
      result.seeds.push_back({t.algorithm, t.seed, t.best_value, r, elapsed, t.evaluations});
      best.push_back(t.best_value);
      regret.push_back(r);
      wall += elapsed;
    }
    s.algorithm = result.traces[a * n_seeds].algorithm;
    s.runs = n_seeds;
    s.iterations = config.iterations;
    s.median_best = median(best);
    s.best_best = *std::min_element(best.begin(), best.end());
    s.median_log_regret = result.f_star ? median(regret) : std::numeric_limits<double>::quiet_NaN();
    s.mean_wall_s = wall / static_cast<double>(n_seeds);
    result.algorithms.push_back(s);
  }
  return result;
}

std::string format_comparison(const ExperimentResult& result) {
  std::string out = "algorithm,runs,iterations,median_best,best,median_log_regret,mean_wall_s\n";
  for (const auto& a : result.algorithms) {
    out += a.algorithm + ',' + std::to_string(a.runs) + ',' + std::to_string(a.iterations) + ',' +
           format_number(a.median_best) + ',' + format_number(a.best_best) + ',' +
           format_number(a.median_log_regret) + ',' + format_number(a.mean_wall_s) + '\n';
  }
  return out;
}

void write_experiment(const ExperimentResult& result, const ExperimentConfig& config,
                      const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  CsvOptions full;
  CsvOptions figure;
  figure.burn_in = config.burn_in;

  const std::size_t n_seeds = config.seeds.size();
  for (std::size_t start = 0; start < result.traces.size(); start += n_seeds) {
    const std::span<const RunTrace> group(result.traces.data() + start, n_seeds);
    const std::string& algo = group.front().algorithm;
    for (const auto& t : group)
      write_trace_csv(t, dir / (algo + "_seed" + std::to_string(t.seed) + ".csv"), result.f_star,
                      full);
    write_aggregate_csv(aggregate(group, Metric::kBestValue), dir / (algo + "_aggregate.csv"),
                        figure);
    if (result.f_star)
      write_aggregate_csv(aggregate(group, Metric::kLogRegret, result.f_star),
                          dir / (algo + "_regret.csv"), figure);
  }

  std::string summary = "algorithm,seed,best_value,log_regret,wall_s,evaluations\n";
  for (const auto& s : result.seeds) {
    summary += s.algorithm + ',' + std::to_string(s.seed) + ',' + format_number(s.best_value) +
               ',' + format_number(s.log_regret) + ',' + format_number(s.wall_s) + ',' +
               std::to_string(s.evaluations) + '\n';
  }
  write_text(dir / "summary.csv", summary);
  write_text(dir / "comparison.csv", format_comparison(result));
}

}  // namespace swiftnav
