#ifndef SWIFTNAV_EXPERIMENT_HPP_
#define SWIFTNAV_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "swiftnav/anneal.hpp"
#include "swiftnav/config.hpp"

namespace swiftnav {

struct SeedSummary {
  std::string algorithm;
  std::uint64_t seed = 0;
  double best_value = 0.0;
  double log_regret = 0.0;  // NaN when the optimum is unknown
  double wall_s = 0.0;
  std::uint64_t evaluations = 0;
};

// One row per algorithm.
struct AlgorithmSummary {
  std::string algorithm;
  std::size_t runs = 0;
  std::size_t iterations = 0;
  double median_best = 0.0;
  double best_best = 0.0;
  double median_log_regret = 0.0;
  double mean_wall_s = 0.0;
};

struct ExperimentResult {
  std::vector<RunTrace> traces;  // grouped by algorithm, seeds in config order
  std::vector<SeedSummary> seeds;
  std::vector<AlgorithmSummary> algorithms;
  std::optional<double> f_star;
};

// Runs every selected algorithm over every seed. Seeds run concurrently when
// workers > 1 and there are several seeds; otherwise the workers go to the
// per-dimension sweep. Results do not depend on the worker count.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes <algo>_seed<N>.csv, <algo>_aggregate.csv (best value, burn-in
// excluded), <algo>_regret.csv when f* is known, summary.csv and
// comparison.csv into dir, creating it if needed.
void write_experiment(const ExperimentResult& result, const ExperimentConfig& config,
                      const std::filesystem::path& dir);

std::string format_comparison(const ExperimentResult& result);

double median(std::vector<double> values);

}  // namespace swiftnav

#endif  // SWIFTNAV_EXPERIMENT_HPP_
