#include "swiftnav/anneal.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>

#include "swiftnav/errors.hpp"
#include "swiftnav/walker.hpp"

namespace swiftnav {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_finite_center(double value) {
  if (std::isnan(value)) throw NumericError("objective is NaN at the current state");
  if (value == HUGE_VAL) throw NumericError("objective is +inf at the current state");
}

struct DimensionUpdate {
  double value;           // new coordinate
  double objective;       // objective at the point with that coordinate
  std::uint64_t calls;    // objective evaluations spent
};

DimensionUpdate update_dimension(std::size_t dim, double center, double center_value,
                                 const CoordinateProbe& probe, const DomainSpec& domain,
                                 double step, int k, double temperature, double zeta) {
  const Window window = neighbor_window(center, step, k);
  const std::size_t mid = window.center_index();
  std::uint64_t calls = 0;
  WeightTable table(k, temperature, center_value, [&](std::size_t j) {
    const double v = window.values[j];
    if (j == mid) return center_value;
    if (!in_bounds(v, dim, domain)) return HUGE_VAL;
    ++calls;
    return probe.at(dim, v);
  });
  const std::size_t pick = sample_window(mid, table, zeta);
  return {window.values[pick], table.objective_value(pick), calls};
}

}  // namespace

void AnnealConfig::validate() const {
  if (k < 1) throw ConfigError("k", "exploration parameter must be >= 1");
  if (!(base_step > 0.0)) throw ConfigError("h", "base step must be positive");
  if (!(t0 > 0.0)) throw ConfigError("T0", "initial temperature must be positive");
  if (!(decay > 0.0 && decay < 1.0)) throw ConfigError("decay", "must lie in (0, 1)");
  if (iterations < 1) throw ConfigError("iterations", "budget must be >= 1");
  if (workers < 1) throw ConfigError("workers", "must be >= 1");
  try {
    refine.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("refine", e.what());
  }
}

double temperature_at(std::size_t t, double t0, double decay) {
  const double T = t0 * std::pow(decay, static_cast<double>(t));
  return std::max(T, std::numeric_limits<double>::min());
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t iteration, std::uint64_t dim) {
  return splitmix64(splitmix64(splitmix64(seed) ^ iteration) ^ dim);
}

double open_uniform(std::mt19937_64& rng) {
  // Midpoints of 2^53 equal cells: never 0, never 1.
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

DomainSpec domain_for(const Objective& objective, const AnnealConfig& config) {
  DomainSpec d;
  d.lower = objective.box().lower;
  d.upper = objective.box().upper;
  d.base_step = config.base_step;
  d.exploration = config.k;
  try {
    d.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("domain", e.what());
  }
  return d;
}

SweepResult gibbs_sweep(const AnnealState& state, const Objective& objective,
                        const DomainSpec& domain, const RefineState& refine, std::uint64_t seed,
                        SweepMode mode, int workers) {
  const std::size_t n = state.current.size();
  if (n != domain.dims()) throw InvalidArgument("state and domain dimensions differ");
  if (!domain.contains(state.current)) throw ContractViolation("current state outside domain");
  if (!(state.temperature > 0.0)) throw InvalidArgument("temperature must be positive");
  require_finite_center(state.current_value);

  const double step = refine.step();
  const int k = domain.exploration;
  auto probe = objective.probe(state.current);
  SweepResult out;
  out.next = state.current;

  auto zeta_for = [&](std::size_t dim) {
    std::mt19937_64 rng(stream_seed(seed, state.iteration, dim));
    return open_uniform(rng);
  };

  if (mode == SweepMode::kSequential) {
    double center_value = state.current_value;
    for (std::size_t i = 0; i < n; ++i) {
      const auto u = update_dimension(i, out.next[i], center_value, *probe, domain, step, k,
                                      state.temperature, zeta_for(i));
      out.evaluations += u.calls;
      if (u.value != out.next[i]) {
        out.next[i] = u.value;
        probe->set(i, u.value);
        center_value = u.objective;
      }
    }
    return out;
  }

  std::vector<std::uint64_t> calls(n, 0);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const CoordinateProbe& frozen = *probe;
#pragma omp parallel for num_threads(workers) schedule(static) if (workers > 1)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    try {
      const auto u = update_dimension(i, state.current[i], state.current_value, frozen, domain,
                                      step, k, state.temperature, zeta_for(i));
      out.next[i] = u.value;
      calls[i] = u.calls;
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (auto c : calls) out.evaluations += c;
  return out;
}

RunTrace run_swiftnav(const Objective& objective, const AnnealConfig& config,
                      std::uint64_t seed) {
  config.validate();
  const DomainSpec domain = domain_for(objective, config);
  const auto start = Clock::now();

  std::mt19937_64 rng(seed);
  AnnealState state;
  state.current = sample_initial(domain, rng);
  state.current_value = objective.evaluate(state.current);
  require_finite_center(state.current_value);
  state.best_point = state.current;
  state.best_value = state.current_value;
  state.temperature = temperature_at(0, config.t0, config.decay);

  RunTrace trace;
  trace.algorithm = "swiftnav";
  trace.seed = seed;
  trace.evaluations = 1;
  trace.records.reserve(config.iterations + 1);

  RefineState refine = RefineState::start(config.base_step, state.current_value, config.refine);
  trace.records.push_back({0, state.current_value, state.best_value, refine.step(),
                           state.temperature, seconds_since(start)});

  for (std::size_t t = 0; t < config.iterations; ++t) {
    state.iteration = t;
    state.temperature = temperature_at(t, config.t0, config.decay);
    auto sweep = gibbs_sweep(state, objective, domain, refine, seed, config.sweep,
                             config.workers);
    trace.evaluations += sweep.evaluations;

    state.current = std::move(sweep.next);
    state.current_value = objective.evaluate(state.current);
    ++trace.evaluations;
    require_finite_center(state.current_value);
    if (state.current_value < state.best_value) {
      state.best_value = state.current_value;
      state.best_point = state.current;
    }
    refine = adapt_refine(refine, state.current_value);
    trace.records.push_back({t + 1, state.current_value, state.best_value, refine.step(),
                             temperature_at(t + 1, config.t0, config.decay),
                             seconds_since(start)});
  }
  trace.best_point = state.best_point;
  trace.best_value = state.best_value;
  return trace;
}

double mh_acceptance(double delta, double temperature) {
  if (!(temperature > 0.0)) throw InvalidArgument("temperature must be positive");
  if (delta <= 0.0) return 1.0;
  return std::exp(-delta / temperature);
}

RunTrace run_baseline_mh(const Objective& objective, const AnnealConfig& config,
                         std::uint64_t seed) {
  config.validate();
  const DomainSpec domain = domain_for(objective, config);
  const auto start = Clock::now();
  const std::size_t n = domain.dims();

  std::mt19937_64 rng(seed);
  Point current = sample_initial(domain, rng);
  double value = objective.evaluate(current);
  require_finite_center(value);

  RunTrace trace;
  trace.algorithm = "mh";
  trace.seed = seed;
  trace.evaluations = 1;
  trace.best_point = current;
  trace.best_value = value;
  trace.records.reserve(config.iterations + 1);
  trace.records.push_back({0, value, value, config.base_step,
                           temperature_at(0, config.t0, config.decay), seconds_since(start)});

  std::uniform_int_distribution<std::size_t> pick_dim(0, n - 1);
  for (std::size_t t = 0; t < config.iterations; ++t) {
    const double T = temperature_at(t, config.t0, config.decay);
    const std::size_t i = pick_dim(rng);
    const double direction = (rng() & 1U) ? 1.0 : -1.0;
    const double u = open_uniform(rng);
    const double proposal = current[i] + direction * config.base_step;
    if (in_bounds(proposal, i, domain)) {
      const double old = current[i];
      current[i] = proposal;
      const double candidate = objective.evaluate(current);
      ++trace.evaluations;
      if (!std::isnan(candidate) && u < mh_acceptance(candidate - value, T)) {
        value = candidate;
        if (value < trace.best_value) {
          trace.best_value = value;
          trace.best_point = current;
        }
      } else {
        current[i] = old;
      }
    }
    trace.records.push_back({t + 1, value, trace.best_value, config.base_step,
                             temperature_at(t + 1, config.t0, config.decay),
                             seconds_since(start)});
  }
  return trace;
}

}  // namespace swiftnav
