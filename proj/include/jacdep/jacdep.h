/* SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the jacdep simulator. Handles are opaque; every call that
 * can fail returns a jacdep_status and leaves a message for
 * jacdep_last_error() on the calling thread. Strings returned through char**
 * are owned by the caller and released with jacdep_string_free().
 */
#ifndef JACDEP_JACDEP_H
#define JACDEP_JACDEP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(JACDEP_BUILDING)
#    define JACDEP_API __declspec(dllexport)
#  else
#    define JACDEP_API __declspec(dllimport)
#  endif
#else
#  define JACDEP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define JACDEP_VERSION "0.1.0"

typedef enum jacdep_status {
  JACDEP_OK = 0,
  JACDEP_ERR_INVALID_ARGUMENT = 1, /* null handle or pointer */
  JACDEP_ERR_PARSE = 2,            /* malformed config line */
  JACDEP_ERR_UNKNOWN_KEY = 3,
  JACDEP_ERR_RANGE = 4,            /* value out of its allowed range */
  JACDEP_ERR_IO = 5,
  JACDEP_ERR_NUMERIC = 6,          /* a model or inference step failed */
  JACDEP_ERR_INTERNAL = 7
} jacdep_status;

typedef struct jacdep_config jacdep_config;
typedef struct jacdep_result jacdep_result;

typedef struct jacdep_metric_row {
  int upp;
  int ue;
  const char* algorithm; /* jac_ep, jacd_ep or genie_mmse; static storage */
  const char* metric;    /* der, nmse or ser; valid while the result lives */
  double value;
  int64_t n_samples;
} jacdep_metric_row;

JACDEP_API const char* jacdep_version(void);
JACDEP_API const char* jacdep_status_name(jacdep_status status);
/* Message of the last failed call on this thread; "" if none. */
JACDEP_API const char* jacdep_last_error(void);
JACDEP_API void jacdep_string_free(char* s);

/* True for the statuses caused by the configuration itself. */
JACDEP_API int jacdep_is_config_error(jacdep_status status);

JACDEP_API jacdep_status jacdep_config_parse(const char* text, jacdep_config** out);
JACDEP_API jacdep_status jacdep_config_load(const char* path, jacdep_config** out);
JACDEP_API void jacdep_config_free(jacdep_config* config);
/* JACDEP_WORKERS, when set, replaces the worker count. */
JACDEP_API jacdep_status jacdep_config_apply_environment(jacdep_config* config);
JACDEP_API jacdep_status jacdep_config_echo(const jacdep_config* config, char** out);
JACDEP_API jacdep_status jacdep_config_output_dir(const jacdep_config* config, char** out);
JACDEP_API jacdep_status jacdep_config_set_output_dir(jacdep_config* config, const char* dir);
JACDEP_API jacdep_status jacdep_config_set_workers(jacdep_config* config, int workers);

JACDEP_API jacdep_status jacdep_campaign_run(const jacdep_config* config, jacdep_result** out);
JACDEP_API void jacdep_result_free(jacdep_result* result);
JACDEP_API jacdep_status jacdep_result_write(const jacdep_result* result, const char* output_dir);
JACDEP_API jacdep_status jacdep_result_summary(const jacdep_result* result, char** out);
JACDEP_API jacdep_status jacdep_result_metrics_csv(const jacdep_result* result, char** out);
JACDEP_API size_t jacdep_result_row_count(const jacdep_result* result);
JACDEP_API jacdep_status jacdep_result_row(const jacdep_result* result, size_t index, jacdep_metric_row* row);
JACDEP_API double jacdep_result_wall_seconds(const jacdep_result* result);
/* Reals exchanged per JACD-EP iteration of one trial; 0 if JACD-EP was not run. */
JACDEP_API int64_t jacdep_result_fronthaul_per_iteration(const jacdep_result* result);

/* Fixture export: draws realization `realization` of UPP
 * outcome `upp` under `config` and returns it as JSON. */
JACDEP_API jacdep_status jacdep_scenario_json(const jacdep_config* config, int upp, int realization, char** out);

JACDEP_API size_t jacdep_oracle_count(void);
JACDEP_API const char* jacdep_oracle_name(size_t index);
/* Runs one brute-force oracle suite. `detail` may be null. */
JACDEP_API jacdep_status jacdep_oracle_run(const char* suite, int workers, int* passed, char** detail,
                                           double* seconds);

#ifdef __cplusplus
}
#endif

#endif /* JACDEP_JACDEP_H */
