// SPDX-License-Identifier: Apache-2.0
//
// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "jacdep/jacdep.h"

namespace fs = std::filesystem;

namespace {

const char* kSmall =
    "L = 4\nK = 5\nT_p = 4\nT_d = 3\nap_spacing_m = 200\n"
    "i_max = 5\njac_i_max = 5\nseed = 99\nn_upp = 2\nn_realizations = 3\n";

std::string take(char* s) {
  std::string out = s ? s : "";
  jacdep_string_free(s);
  return out;
}

struct Config {
  jacdep_config* handle = nullptr;
  explicit Config(const char* text) { REQUIRE(jacdep_config_parse(text, &handle) == JACDEP_OK); }
  ~Config() { jacdep_config_free(handle); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(jacdep_version()) == JACDEP_VERSION);
  CHECK(std::string(jacdep_status_name(JACDEP_OK)) == "ok");
  CHECK(std::string(jacdep_status_name(JACDEP_ERR_UNKNOWN_KEY)) == "unknown_key");
  CHECK(jacdep_is_config_error(JACDEP_ERR_PARSE));
  CHECK(jacdep_is_config_error(JACDEP_ERR_RANGE));
  CHECK_FALSE(jacdep_is_config_error(JACDEP_ERR_IO));
  CHECK_FALSE(jacdep_is_config_error(JACDEP_ERR_NUMERIC));
}

TEST_CASE("config errors map to status codes") {
  jacdep_config* c = nullptr;
  CHECK(jacdep_config_parse("L = 4\nbogus = 1\n", &c) == JACDEP_ERR_UNKNOWN_KEY);
  CHECK(c == nullptr);
  CHECK(std::string(jacdep_last_error()).find("line 2") != std::string::npos);

  CHECK(jacdep_config_parse("L 4\n", &c) == JACDEP_ERR_PARSE);
  CHECK(jacdep_config_parse("lambda = 1.5\n", &c) == JACDEP_ERR_RANGE);
  CHECK(jacdep_config_load("/nonexistent/dir/x.conf", &c) == JACDEP_ERR_IO);
  CHECK(jacdep_config_parse(nullptr, &c) == JACDEP_ERR_INVALID_ARGUMENT);

  // Success clears the message.
  CHECK(jacdep_config_parse("", &c) == JACDEP_OK);
  CHECK(std::string(jacdep_last_error()).empty());
  jacdep_config_free(c);
}

TEST_CASE("null handles are rejected") {
  char* s = nullptr;
  jacdep_result* r = nullptr;
  CHECK(jacdep_config_echo(nullptr, &s) == JACDEP_ERR_INVALID_ARGUMENT);
  CHECK(jacdep_campaign_run(nullptr, &r) == JACDEP_ERR_INVALID_ARGUMENT);
  CHECK(jacdep_result_row_count(nullptr) == 0);
  CHECK(jacdep_result_wall_seconds(nullptr) == 0.0);
  jacdep_config_free(nullptr);
  jacdep_result_free(nullptr);
  jacdep_string_free(nullptr);
}

TEST_CASE("echo parses back to the same echo") {
  Config a(kSmall);
  char* echo = nullptr;
  REQUIRE(jacdep_config_echo(a.handle, &echo) == JACDEP_OK);
  const std::string first = take(echo);
  CHECK(first.find("K = 5") != std::string::npos);

  Config b(first.c_str());
  REQUIRE(jacdep_config_echo(b.handle, &echo) == JACDEP_OK);
  CHECK(take(echo) == first);
}

TEST_CASE("set_workers validates and leaves the echo alone") {
  Config a(kSmall);
  char* echo = nullptr;
  REQUIRE(jacdep_config_echo(a.handle, &echo) == JACDEP_OK);
  const std::string before = take(echo);

  CHECK(jacdep_config_set_workers(a.handle, 0) == JACDEP_ERR_RANGE);
  CHECK(jacdep_config_set_workers(a.handle, 3) == JACDEP_OK);
  // The worker count is not part of the echoed results.
  REQUIRE(jacdep_config_echo(a.handle, &echo) == JACDEP_OK);
  const std::string after = take(echo);
  CHECK(after == before);
  CHECK(after.find("workers") == std::string::npos);
}

TEST_CASE("campaign rows, csv and written files") {
  Config a(kSmall);
  jacdep_result* r = nullptr;
  REQUIRE(jacdep_campaign_run(a.handle, &r) == JACDEP_OK);

  const std::size_t n = jacdep_result_row_count(r);
  REQUIRE(n > 0);
  jacdep_metric_row row{};
  for (std::size_t i = 0; i < n; ++i) {
    REQUIRE(jacdep_result_row(r, i, &row) == JACDEP_OK);
    CHECK(row.upp >= 0);
    CHECK(row.upp < 2);
    CHECK(row.ue >= 0);
    CHECK(row.ue < 5);
    const std::string m = row.metric;
    CHECK((m == "der" || m == "nmse" || m == "ser"));
    CHECK(row.n_samples >= 0);
  }
  CHECK(jacdep_result_row(r, n, &row) == JACDEP_ERR_RANGE);

  // 2LK(T_d(M-1)+1) with the default 4-QAM data.
  CHECK(jacdep_result_fronthaul_per_iteration(r) == 2 * 4 * 5 * (3 * 3 + 1));

  char* csv = nullptr;
  REQUIRE(jacdep_result_metrics_csv(r, &csv) == JACDEP_OK);
  const std::string text = take(csv);
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == n + 1);

  const fs::path dir = fs::temp_directory_path() / "jacdep_c_api_test";
  fs::remove_all(dir);
  REQUIRE(jacdep_result_write(r, dir.string().c_str()) == JACDEP_OK);
  CHECK(slurp(dir / "metrics.csv") == text);

  char* summary = nullptr;
  REQUIRE(jacdep_result_summary(r, &summary) == JACDEP_OK);
  CHECK_FALSE(take(summary).empty());
  jacdep_result_free(r);
  fs::remove_all(dir);
}

TEST_CASE("scenario export is valid json with the configured shape") {
  Config a(kSmall);
  char* js = nullptr;
  REQUIRE(jacdep_scenario_json(a.handle, 1, 2, &js) == JACDEP_OK);
  const nlohmann::json doc = nlohmann::json::parse(take(js));
  CHECK(doc.at("L") == 4);
  CHECK(doc.at("K") == 5);
  CHECK(doc.at("Td") == 3);
  CHECK(doc.at("active").size() == 5);
  CHECK(jacdep_scenario_json(a.handle, -1, 0, &js) == JACDEP_ERR_RANGE);
}

TEST_CASE("oracle suites are listed in acceptance order") {
  REQUIRE(jacdep_oracle_count() == 9);
  CHECK(std::string(jacdep_oracle_name(0)) == "gaussian");
  CHECK(std::string(jacdep_oracle_name(8)) == "determinism");
  CHECK(jacdep_oracle_name(9) == nullptr);

  int passed = 0;
  double seconds = -1.0;
  CHECK(jacdep_oracle_run("no_such_suite", 1, &passed, nullptr, &seconds) == JACDEP_ERR_RANGE);
  CHECK(jacdep_oracle_run("fronthaul", 1, &passed, nullptr, &seconds) == JACDEP_OK);
  CHECK(passed == 1);
  CHECK(seconds >= 0.0);
}
