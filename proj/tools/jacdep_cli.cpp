// SPDX-License-Identifier: Apache-2.0
//
// jacdep command line: run, validate, oracle, version.
// Exit codes: 0 success, 2 bad invocation or configuration, 1 anything else.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "jacdep/jacdep.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

int report(jacdep_status status) {
  std::cerr << "jacdep: " << jacdep_last_error() << "\n";
  return jacdep_is_config_error(status) ? kExitConfig : kExitRuntime;
}

// Loading counts as configuration: an unreadable file is the user's input too.
int load(const std::string& path, jacdep_config** config) {
  jacdep_status st = jacdep_config_load(path.c_str(), config);
  if (st != JACDEP_OK) {
    std::cerr << "jacdep: " << jacdep_last_error() << "\n";
    return kExitConfig;
  }
  st = jacdep_config_apply_environment(*config);
  if (st != JACDEP_OK) {
    std::cerr << "jacdep: " << jacdep_last_error() << "\n";
    return kExitConfig;
  }
  return 0;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  jacdep_string_free(s);
  return out;
}

int cmd_validate(const std::string& path) {
  jacdep_config* config = nullptr;
  if (int rc = load(path, &config)) return rc;
  char* echo = nullptr;
  const jacdep_status st = jacdep_config_echo(config, &echo);
  jacdep_config_free(config);
  if (st != JACDEP_OK) return report(st);
  std::cout << take(echo);
  return 0;
}

int cmd_run(const std::string& path) {
  jacdep_config* config = nullptr;
  if (int rc = load(path, &config)) return rc;
  char* dir = nullptr;
  jacdep_result* result = nullptr;
  jacdep_status st = jacdep_config_output_dir(config, &dir);
  if (st == JACDEP_OK) st = jacdep_campaign_run(config, &result);
  jacdep_config_free(config);
  const std::string output_dir = take(dir);
  if (st != JACDEP_OK) return report(st);

  char* summary = nullptr;
  st = jacdep_result_write(result, output_dir.c_str());
  if (st == JACDEP_OK) st = jacdep_result_summary(result, &summary);
  const double wall = jacdep_result_wall_seconds(result);
  jacdep_result_free(result);
  if (st != JACDEP_OK) return report(st);
  std::cout << take(summary);
  // Wall-clock stays out of the result files so reruns compare byte for byte.
  std::cout << "wall_seconds = " << wall << "\n";
  std::cout << "results written to " << output_dir << "\n";
  return 0;
}

int run_one_oracle(const std::string& name, int workers) {
  int passed = 0;
  char* detail = nullptr;
  double seconds = 0.0;
  const jacdep_status st = jacdep_oracle_run(name.c_str(), workers, &passed, &detail, &seconds);
  if (st != JACDEP_OK) return report(st);
  std::cout << name << ": " << (passed ? "PASS" : "FAIL") << " " << take(detail) << " (" << seconds << " s)"
            << std::endl;
  return passed ? 0 : kExitRuntime;
}

int cmd_oracle(const std::string& suite, int workers) {
  if (suite != "all") return run_one_oracle(suite, workers);
  int rc = 0;
  for (std::size_t i = 0; i < jacdep_oracle_count(); ++i) {
    if (run_one_oracle(jacdep_oracle_name(i), workers) != 0) rc = kExitRuntime;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grant-free cell-free uplink simulator: activity, channel and data detection by EP"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a Monte Carlo campaign and write its result files");
  run->add_option("config", config_path, "Configuration file")->required();

  auto* validate = app.add_subcommand("validate", "Check a configuration and print it with defaults filled in");
  validate->add_option("config", config_path, "Configuration file")->required();

  std::string suite;
  int workers = 1;
  std::string suites = "all";
  for (std::size_t i = 0; i < jacdep_oracle_count(); ++i) suites += std::string(", ") + jacdep_oracle_name(i);
  auto* oracle = app.add_subcommand("oracle", "Run a brute-force check suite");
  oracle->add_option("suite", suite, "One of: " + suites)->required();
  oracle->add_option("--workers", workers, "Worker threads for the campaign-based suites")
      ->check(CLI::PositiveNumber);

  auto* version = app.add_subcommand("version", "Print the library version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (*version) {
    std::cout << "jacdep " << jacdep_version() << "\n";
    return 0;
  }
  if (*validate) return cmd_validate(config_path);
  if (*run) return cmd_run(config_path);
  if (*oracle) {
    bool known = suite == "all";
    for (std::size_t i = 0; i < jacdep_oracle_count(); ++i) known = known || suite == jacdep_oracle_name(i);
    if (!known) {
      std::cerr << "jacdep: unknown suite '" << suite << "'\n" << oracle->help();
      return kExitConfig;
    }
    return cmd_oracle(suite, workers);
  }
  return kExitConfig;
}
