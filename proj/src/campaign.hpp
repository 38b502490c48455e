// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo campaign: UPP outcomes (fresh geometry) times realizations
// (fresh channels, activity, pilots, data and noise). Every trial draws from
// its own generator seeded by a hash of (seed, upp, realization), and results
// are folded in index order, so the worker count never changes the output.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "system_model.hpp"

namespace jacdep {

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t upp, std::uint64_t realization);
/// Seed of the geometry draw of one UPP outcome.
std::uint64_t geometry_seed(std::uint64_t seed, std::uint64_t upp);

struct UppNetwork {
  Geometry geometry;
  LargeScale large_scale;
};
UppNetwork draw_upp(const SimConfig& config, int upp);
NetworkScenario draw_realization(const SimConfig& config, const UppNetwork& net, int upp, int realization);

/// Per-UE outcome of one algorithm on one realization.
struct UeOutcome {
  bool active = false;
  bool error_activity = false;
  std::optional<double> nmse;  // active users with a qualifying link only
  std::int64_t symbol_errors = 0;
  std::int64_t symbols = 0;
};

struct TrialOutcome {
  int upp = 0;
  int realization = 0;
  // Indexed [algorithm][ue]; algorithms not run are empty.
  std::vector<UeOutcome> per_algorithm[3];
  std::int64_t fronthaul_reals_per_iter = 0;
};

TrialOutcome run_trial(const CampaignConfig& config, const UppNetwork& net, int upp, int realization);

struct MetricRow {
  int upp = 0;
  int ue = 0;
  Algorithm algorithm = Algorithm::kJacEp;
  std::string metric;  // der, nmse or ser
  double value = 0.0;
  std::int64_t n_samples = 0;
};

struct CampaignResult {
  CampaignConfig config;
  std::vector<MetricRow> rows;  // (upp, ue, algorithm, metric) order; absent values omitted
  std::int64_t fronthaul_reals_per_iter = 0;  // JACD-EP, 0 if not run
  std::int64_t fronthaul_reals_total = 0;
  std::vector<std::uint64_t> large_scale_hashes;  // one per UPP outcome
  double wall_seconds = 0.0;

  /// Values of one (algorithm, metric) column in row order.
  std::vector<double> values(Algorithm a, const std::string& metric) const;
  /// Same, but keyed so two campaigns can be paired on (upp, ue).
  std::optional<double> value(int upp, int ue, Algorithm a, const std::string& metric) const;
};

/// Metrics reported for an algorithm, in output order.
std::vector<std::string> metrics_of(Algorithm a);

CampaignResult run_campaign(const CampaignConfig& config);

/// config_echo.txt, metrics.csv, cdf_<metric>_<algorithm>.csv, summary.txt.
void write_results(const CampaignResult& result, const std::string& output_dir);

std::string metrics_csv(const CampaignResult& result);
std::string summary_text(const CampaignResult& result);

}  // namespace jacdep
