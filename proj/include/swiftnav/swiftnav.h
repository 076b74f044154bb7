#ifndef SWIFTNAV_SWIFTNAV_H_
#define SWIFTNAV_SWIFTNAV_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef SWIFTNAV_BUILDING_LIBRARY
#    define SWIFTNAV_API __declspec(dllexport)
#  else
#    define SWIFTNAV_API __declspec(dllimport)
#  endif
#else
#  define SWIFTNAV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sn_status {
  SN_OK = 0,
  SN_ERR_INVALID_ARGUMENT = 1,
  SN_ERR_CONFIG = 2,
  SN_ERR_PARSE = 3,
  SN_ERR_IO = 4,
  SN_ERR_NUMERIC = 5,
  SN_ERR_CONTRACT = 6,
  SN_ERR_RUNTIME = 7
} sn_status;

typedef enum sn_algorithm {
  SN_ALGO_SWIFTNAV = 0,
  SN_ALGO_MH = 1
} sn_algorithm;

typedef struct sn_config sn_config;
typedef struct sn_problem sn_problem;
typedef struct sn_trace sn_trace;

typedef struct sn_record {
  uint64_t iteration;
  double value;
  double best_value;
  double step;
  double temperature;
  double elapsed_s;
} sn_record;

/* Objective callback. Called from worker threads when workers > 1. */
typedef double (*sn_objective_fn)(const double* x, size_t n, void* user);

SWIFTNAV_API const char* sn_version(void);

/* Message and config field of the last failure on the calling thread. */
SWIFTNAV_API const char* sn_last_error(void);
SWIFTNAV_API const char* sn_last_error_field(void);

SWIFTNAV_API sn_status sn_log_regret(double f_value, double f_star, double* out);

/* Configuration. Strings returned through char** are freed with sn_string_free. */
SWIFTNAV_API sn_status sn_config_new(sn_config** out);
SWIFTNAV_API sn_status sn_config_parse(const char* text, sn_config** out);
SWIFTNAV_API sn_status sn_config_load(const char* path, sn_config** out);
SWIFTNAV_API sn_status sn_config_set(sn_config* config, const char* key, const char* value);
SWIFTNAV_API sn_status sn_config_validate(const sn_config* config);
SWIFTNAV_API sn_status sn_config_serialize(const sn_config* config, char** out);
SWIFTNAV_API void sn_config_free(sn_config* config);
SWIFTNAV_API void sn_string_free(char* s);

/* Problems. */
SWIFTNAV_API sn_status sn_problem_from_config(const sn_config* config, sn_problem** out);
SWIFTNAV_API sn_status sn_problem_create_callback(size_t dims, const double* lower,
                                                  const double* upper, sn_objective_fn fn,
                                                  void* user, sn_problem** out);
SWIFTNAV_API sn_status sn_problem_evaluate(const sn_problem* problem, const double* x, size_t n,
                                           double* out);
SWIFTNAV_API size_t sn_problem_dims(const sn_problem* problem);
/* Returns 1 and writes the optimum when it is known, 0 otherwise. */
SWIFTNAV_API int sn_problem_known_optimum(const sn_problem* problem, double* out);
SWIFTNAV_API void sn_problem_free(sn_problem* problem);

/* Single runs. The config supplies k, h, refinement, schedule and budget. */
SWIFTNAV_API sn_status sn_run(const sn_problem* problem, const sn_config* config,
                              sn_algorithm algorithm, uint64_t seed, sn_trace** out);
SWIFTNAV_API size_t sn_trace_length(const sn_trace* trace);
SWIFTNAV_API sn_status sn_trace_record(const sn_trace* trace, size_t i, sn_record* out);
SWIFTNAV_API double sn_trace_best_value(const sn_trace* trace);
SWIFTNAV_API sn_status sn_trace_best_point(const sn_trace* trace, double* out, size_t n);
SWIFTNAV_API uint64_t sn_trace_evaluations(const sn_trace* trace);
/* f_star may be NULL; burn_in rows are skipped. */
SWIFTNAV_API sn_status sn_trace_write_csv(const sn_trace* trace, const char* path,
                                          const double* f_star, size_t burn_in);
SWIFTNAV_API void sn_trace_free(sn_trace* trace);

/* Full experiment: every seed and algorithm in the config, CSVs written to
   out_dir (or the config's out when NULL). comparison may be NULL. */
SWIFTNAV_API sn_status sn_experiment_run(const sn_config* config, const char* out_dir,
                                         char** comparison);

#ifdef __cplusplus
}
#endif

#endif  /* SWIFTNAV_SWIFTNAV_H_ */
