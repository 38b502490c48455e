// SPDX-License-Identifier: Apache-2.0
//
// Campaign configuration: `key = value` lines, '#' starts a comment. Every
// key is optional; the defaults are the SimConfig defaults plus the values
// below.
#pragma once

#include <string>
#include <vector>

#include "system_model.hpp"

namespace jacdep {

enum class Algorithm { kJacEp, kJacdEp, kGenieMmse };

/// Where JACD-EP takes its priors from.
enum class PriorSource { kJacEp, kNeutral };

const char* algorithm_name(Algorithm a);

struct CampaignConfig {
  SimConfig sim;
  int n_upp = 100;
  int n_realizations = 1000;
  std::vector<Algorithm> algorithms{Algorithm::kJacEp, Algorithm::kJacdEp, Algorithm::kGenieMmse};
  std::string output_dir = "results";
  int workers = 1;
  PriorSource jacd_priors = PriorSource::kJacEp;

  bool runs(Algorithm a) const;
  void validate() const;
};

CampaignConfig parse_config(const std::string& text);
CampaignConfig load_config(const std::string& path);

/// Canonical text of every setting except the worker count, which does not
/// affect results. Parsing it back yields an equal configuration.
std::string config_echo(const CampaignConfig& c);

/// JACDEP_WORKERS, when set, replaces the configured worker count.
void apply_environment(CampaignConfig& c);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace jacdep
