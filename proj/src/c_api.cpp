// SPDX-License-Identifier: Apache-2.0
#include "jacdep/jacdep.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "campaign.hpp"
#include "config.hpp"
#include "error.hpp"
#include "scenario_io.hpp"
#include "validation.hpp"

struct jacdep_config {
  jacdep::CampaignConfig value;
};

struct jacdep_result {
  jacdep::CampaignResult value;
};

namespace {

thread_local std::string last_error;

jacdep_status status_of(jacdep::ErrorCode code) {
  using jacdep::ErrorCode;
  switch (code) {
    case ErrorCode::kParseError: return JACDEP_ERR_PARSE;
    case ErrorCode::kUnknownKey: return JACDEP_ERR_UNKNOWN_KEY;
    case ErrorCode::kRangeError: return JACDEP_ERR_RANGE;
    case ErrorCode::kIoError: return JACDEP_ERR_IO;
    default: return JACDEP_ERR_NUMERIC;
  }
}

jacdep_status fail(jacdep_status status, const char* message) {
  last_error = message;
  return status;
}

template <class F>
jacdep_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return JACDEP_OK;
  } catch (const jacdep::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(JACDEP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(JACDEP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(JACDEP_ERR_INTERNAL, "unknown exception");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* jacdep_version(void) { return JACDEP_VERSION; }

const char* jacdep_status_name(jacdep_status status) {
  switch (status) {
    case JACDEP_OK: return "ok";
    case JACDEP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case JACDEP_ERR_PARSE: return "parse_error";
    case JACDEP_ERR_UNKNOWN_KEY: return "unknown_key";
    case JACDEP_ERR_RANGE: return "range_error";
    case JACDEP_ERR_IO: return "io_error";
    case JACDEP_ERR_NUMERIC: return "numeric_error";
    case JACDEP_ERR_INTERNAL: return "internal_error";
  }
  return "unknown_status";
}

const char* jacdep_last_error(void) { return last_error.c_str(); }

void jacdep_string_free(char* s) { std::free(s); }

int jacdep_is_config_error(jacdep_status status) {
  return status == JACDEP_ERR_PARSE || status == JACDEP_ERR_UNKNOWN_KEY || status == JACDEP_ERR_RANGE;
}

jacdep_status jacdep_config_parse(const char* text, jacdep_config** out) {
  if (!text || !out) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new jacdep_config{jacdep::parse_config(text)}; });
}

jacdep_status jacdep_config_load(const char* path, jacdep_config** out) {
  if (!path || !out) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new jacdep_config{jacdep::load_config(path)}; });
}

void jacdep_config_free(jacdep_config* config) { delete config; }

jacdep_status jacdep_config_apply_environment(jacdep_config* config) {
  if (!config) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null config");
  return guarded([&] { jacdep::apply_environment(config->value); });
}

jacdep_status jacdep_config_echo(const jacdep_config* config, char** out) {
  if (!config || !out) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = copy_string(jacdep::config_echo(config->value)); });
}

jacdep_status jacdep_config_output_dir(const jacdep_config* config, char** out) {
  if (!config || !out) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = copy_string(config->value.output_dir); });
}

jacdep_status jacdep_config_set_output_dir(jacdep_config* config, const char* dir) {
  if (!config || !dir) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { config->value.output_dir = dir; });
}

jacdep_status jacdep_config_set_workers(jacdep_config* config, int workers) {
  if (!config) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null config");
  return guarded([&] {
    jacdep::CampaignConfig c = config->value;
    c.workers = workers;
    c.validate();
    config->value = c;
  });
}

jacdep_status jacdep_campaign_run(const jacdep_config* config, jacdep_result** out) {
  if (!config || !out) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new jacdep_result{jacdep::run_campaign(config->value)}; });
}

void jacdep_result_free(jacdep_result* result) { delete result; }

jacdep_status jacdep_result_write(const jacdep_result* result, const char* output_dir) {
  if (!result || !output_dir) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { jacdep::write_results(result->value, output_dir); });
}

jacdep_status jacdep_result_summary(const jacdep_result* result, char** out) {
  if (!result || !out) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = copy_string(jacdep::summary_text(result->value)); });
}

jacdep_status jacdep_result_metrics_csv(const jacdep_result* result, char** out) {
  if (!result || !out) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = copy_string(jacdep::metrics_csv(result->value)); });
}

size_t jacdep_result_row_count(const jacdep_result* result) { return result ? result->value.rows.size() : 0; }

jacdep_status jacdep_result_row(const jacdep_result* result, size_t index, jacdep_metric_row* row) {
  if (!result || !row) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= result->value.rows.size()) return fail(JACDEP_ERR_RANGE, "row index out of range");
  const jacdep::MetricRow& r = result->value.rows[index];
  row->upp = r.upp;
  row->ue = r.ue;
  row->algorithm = jacdep::algorithm_name(r.algorithm);
  row->metric = r.metric.c_str();
  row->value = r.value;
  row->n_samples = r.n_samples;
  last_error.clear();
  return JACDEP_OK;
}

double jacdep_result_wall_seconds(const jacdep_result* result) { return result ? result->value.wall_seconds : 0.0; }

int64_t jacdep_result_fronthaul_per_iteration(const jacdep_result* result) {
  return result ? result->value.fronthaul_reals_per_iter : 0;
}

jacdep_status jacdep_scenario_json(const jacdep_config* config, int upp, int realization, char** out) {
  if (!config || !out) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (upp < 0 || realization < 0) return fail(JACDEP_ERR_RANGE, "negative index");
  return guarded([&] {
    const jacdep::UppNetwork net = jacdep::draw_upp(config->value.sim, upp);
    *out = copy_string(jacdep::scenario_to_json(jacdep::draw_realization(config->value.sim, net, upp, realization)));
  });
}

size_t jacdep_oracle_count(void) { return jacdep::oracle_suites().size(); }

const char* jacdep_oracle_name(size_t index) {
  const auto& names = jacdep::oracle_suites();
  return index < names.size() ? names[index].c_str() : nullptr;
}

jacdep_status jacdep_oracle_run(const char* suite, int workers, int* passed, char** detail, double* seconds) {
  if (!suite || !passed) return fail(JACDEP_ERR_INVALID_ARGUMENT, "null argument");
  if (detail) *detail = nullptr;
  return guarded([&] {
    const jacdep::OracleReport r = jacdep::run_oracle(suite, workers);
    *passed = r.passed ? 1 : 0;
    if (seconds) *seconds = r.seconds;
    if (detail) *detail = copy_string(r.detail);
  });
}

}  // extern "C"
