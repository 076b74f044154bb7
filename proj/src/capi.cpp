#include "swiftnav/swiftnav.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "swiftnav/anneal.hpp"
#include "swiftnav/config.hpp"
#include "swiftnav/errors.hpp"
#include "swiftnav/experiment.hpp"
#include "swiftnav/objectives.hpp"
#include "swiftnav/report.hpp"

struct sn_config {
  swiftnav::ExperimentConfig value;
};

struct sn_problem {
  swiftnav::ObjectivePtr objective;
};

struct sn_trace {
  swiftnav::RunTrace value;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_field;

sn_status fail(sn_status code, const char* message, std::string field = {}) {
  g_error = message;
  g_field = std::move(field);
  return code;
}

template <typename F>
sn_status guard(F&& body) {
  try {
    g_error.clear();
    g_field.clear();
    body();
    return SN_OK;
  } catch (const swiftnav::ConfigError& e) {
    return fail(SN_ERR_CONFIG, e.what(), e.field());
  } catch (const swiftnav::ParseError& e) {
    return fail(SN_ERR_PARSE, e.what());
  } catch (const swiftnav::IoError& e) {
    return fail(SN_ERR_IO, e.what());
  } catch (const swiftnav::NumericError& e) {
    return fail(SN_ERR_NUMERIC, e.what());
  } catch (const swiftnav::ContractViolation& e) {
    return fail(SN_ERR_CONTRACT, e.what());
  } catch (const swiftnav::InvalidArgument& e) {
    return fail(SN_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SN_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(SN_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(SN_ERR_RUNTIME, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (!p) throw swiftnav::InvalidArgument(std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* sn_version(void) { return "1.0.0"; }
const char* sn_last_error(void) { return g_error.c_str(); }
const char* sn_last_error_field(void) { return g_field.c_str(); }

sn_status sn_log_regret(double f_value, double f_star, double* out) {
  return guard([&] {
    require(out, "out");
    *out = swiftnav::log_regret(f_value, f_star);
  });
}

sn_status sn_config_new(sn_config** out) {
  return guard([&] {
    require(out, "out");
    *out = new sn_config{swiftnav::default_config()};
  });
}

sn_status sn_config_parse(const char* text, sn_config** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new sn_config{swiftnav::parse_config_any(text)};
  });
}

sn_status sn_config_load(const char* path, sn_config** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new sn_config{swiftnav::load_config(path)};
  });
}

sn_status sn_config_set(sn_config* config, const char* key, const char* value) {
  return guard([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    swiftnav::set_field(config->value, key, value);
  });
}

sn_status sn_config_validate(const sn_config* config) {
  return guard([&] {
    require(config, "config");
    config->value.validate();
  });
}

sn_status sn_config_serialize(const sn_config* config, char** out) {
  return guard([&] {
    require(config, "config");
    require(out, "out");
    *out = copy_string(swiftnav::serialize(config->value));
  });
}

void sn_config_free(sn_config* config) { delete config; }
void sn_string_free(char* s) { std::free(s); }

sn_status sn_problem_from_config(const sn_config* config, sn_problem** out) {
  return guard([&] {
    require(config, "config");
    require(out, "out");
    config->value.validate();
    *out = new sn_problem{
        swiftnav::make_objective(config->value.problem, config->value.objective_options())};
  });
}

sn_status sn_problem_create_callback(size_t dims, const double* lower, const double* upper,
                                     sn_objective_fn fn, void* user, sn_problem** out) {
  return guard([&] {
    require(lower, "lower");
    require(upper, "upper");
    require(out, "out");
    if (!fn) throw swiftnav::InvalidArgument("objective callback is null");
    if (dims == 0) throw swiftnav::InvalidArgument("dims must be >= 1");
    swiftnav::Box box{{lower, lower + dims}, {upper, upper + dims}};
    for (size_t i = 0; i < dims; ++i)
      if (!(box.lower[i] < box.upper[i]))
        throw swiftnav::InvalidArgument("lower bound must be below upper bound");
    auto f = [fn, user](std::span<const double> x) { return fn(x.data(), x.size(), user); };
    *out = new sn_problem{
        std::make_shared<swiftnav::FunctionObjective>("callback", std::move(box), f)};
  });
}

sn_status sn_problem_evaluate(const sn_problem* problem, const double* x, size_t n, double* out) {
  return guard([&] {
    require(problem, "problem");
    require(x, "x");
    require(out, "out");
    if (n != problem->objective->arity())
      throw swiftnav::InvalidArgument("point has the wrong dimension");
    *out = problem->objective->evaluate({x, n});
  });
}

size_t sn_problem_dims(const sn_problem* problem) {
  return problem ? problem->objective->arity() : 0;
}

int sn_problem_known_optimum(const sn_problem* problem, double* out) {
  if (!problem) return 0;
  const auto f = problem->objective->known_optimum();
  if (f && out) *out = *f;
  return f ? 1 : 0;
}

void sn_problem_free(sn_problem* problem) { delete problem; }

sn_status sn_run(const sn_problem* problem, const sn_config* config, sn_algorithm algorithm,
                 uint64_t seed, sn_trace** out) {
  return guard([&] {
    require(problem, "problem");
    require(config, "config");
    require(out, "out");
    const auto anneal = config->value.anneal_config();
    const auto& objective = *problem->objective;
    switch (algorithm) {
      case SN_ALGO_SWIFTNAV:
        *out = new sn_trace{swiftnav::run_swiftnav(objective, anneal, seed)};
        break;
      case SN_ALGO_MH:
        *out = new sn_trace{swiftnav::run_baseline_mh(objective, anneal, seed)};
        break;
      default:
        throw swiftnav::InvalidArgument("unknown algorithm");
    }
  });
}

size_t sn_trace_length(const sn_trace* trace) { return trace ? trace->value.records.size() : 0; }

sn_status sn_trace_record(const sn_trace* trace, size_t i, sn_record* out) {
  return guard([&] {
    require(trace, "trace");
    require(out, "out");
    if (i >= trace->value.records.size()) throw swiftnav::InvalidArgument("record out of range");
    const auto& r = trace->value.records[i];
    *out = {r.iteration, r.value, r.best_value, r.step, r.temperature, r.elapsed_s};
  });
}

double sn_trace_best_value(const sn_trace* trace) {
  return trace ? trace->value.best_value : 0.0;
}

sn_status sn_trace_best_point(const sn_trace* trace, double* out, size_t n) {
  return guard([&] {
    require(trace, "trace");
    require(out, "out");
    const auto& p = trace->value.best_point;
    if (n != p.size()) throw swiftnav::InvalidArgument("buffer has the wrong dimension");
    std::copy(p.begin(), p.end(), out);
  });
}

uint64_t sn_trace_evaluations(const sn_trace* trace) {
  return trace ? trace->value.evaluations : 0;
}

sn_status sn_trace_write_csv(const sn_trace* trace, const char* path, const double* f_star,
                             size_t burn_in) {
  return guard([&] {
    require(trace, "trace");
    require(path, "path");
    swiftnav::CsvOptions opts;
    opts.burn_in = burn_in;
    std::optional<double> f;
    if (f_star) f = *f_star;
    swiftnav::write_trace_csv(trace->value, path, f, opts);
  });
}

void sn_trace_free(sn_trace* trace) { delete trace; }

sn_status sn_experiment_run(const sn_config* config, const char* out_dir, char** comparison) {
  return guard([&] {
    require(config, "config");
    const auto result = swiftnav::run_experiment(config->value);
    swiftnav::write_experiment(result, config->value, out_dir ? out_dir : config->value.out);
    if (comparison) *comparison = copy_string(swiftnav::format_comparison(result));
  });
}

}  // extern "C"
