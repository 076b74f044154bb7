#ifndef SWIFTNAV_ANNEAL_HPP_
#define SWIFTNAV_ANNEAL_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "swiftnav/grid.hpp"
#include "swiftnav/objectives.hpp"
#include "swiftnav/refine.hpp"

namespace swiftnav {

enum class SweepMode {
  kSynchronous,  // every dimension samples against the frozen time-t point
  kSequential,   // dimension i sees the already-updated coordinates < i
};

enum class Algorithm { kSwiftNav, kMetropolisBaseline };

struct AnnealConfig {
  int k = 30;
  double base_step = 0.2;
  RefineParams refine;
  double t0 = 100.0;
  double decay = 0.95;
  std::size_t iterations = 1000;
  SweepMode sweep = SweepMode::kSynchronous;
  int workers = 1;

  void validate() const;
};

struct AnnealState {
  Point current;
  double current_value = 0.0;
  Point best_point;
  double best_value = 0.0;
  std::size_t iteration = 0;
  double temperature = 1.0;
};

struct TraceRecord {
  std::size_t iteration = 0;
  double value = 0.0;
  double best_value = 0.0;
  double step = 0.0;  // step in effect for the next sweep
  double temperature = 0.0;
  double elapsed_s = 0.0;
};

// Record 0 is the initial state, so a run of B iterations holds B + 1 records.
struct RunTrace {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> records;
  Point best_point;
  double best_value = 0.0;
  std::uint64_t evaluations = 0;
};

// T0 * decay^t, floored at the smallest normal double so it stays positive.
double temperature_at(std::size_t t, double t0, double decay);

// Seed of the random stream owned by one dimension-update. Depends only on
// (run seed, iteration, dimension), never on scheduling.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t iteration, std::uint64_t dim);

// Uniform draw on the open interval (0, 1).
double open_uniform(std::mt19937_64& rng);

struct SweepResult {
  Point next;
  std::uint64_t evaluations = 0;
};

// One Gibbs-style pass over all dimensions: for each dimension, build the
// window around the current coordinate, weigh candidates lazily through the
// objective with that coordinate replaced, and draw the new coordinate from
// the Walker slice kernel. The current value is reused for the center slot, so
// each dimension costs at most 2k-2 objective calls.
SweepResult gibbs_sweep(const AnnealState& state, const Objective& objective,
                        const DomainSpec& domain, const RefineState& refine, std::uint64_t seed,
                        SweepMode mode = SweepMode::kSynchronous, int workers = 1);

RunTrace run_swiftnav(const Objective& objective, const AnnealConfig& config, std::uint64_t seed);

// min(1, exp(-delta / T)).
double mh_acceptance(double delta, double temperature);

// Classic simulated annealing on the base grid: one random coordinate moves
// one base step per iteration, Metropolis acceptance, same cooling schedule.
RunTrace run_baseline_mh(const Objective& objective, const AnnealConfig& config,
                         std::uint64_t seed);

// Domain spec for an objective's box under a run configuration.
DomainSpec domain_for(const Objective& objective, const AnnealConfig& config);

}  // namespace swiftnav

#endif  // SWIFTNAV_ANNEAL_HPP_
