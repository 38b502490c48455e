// SPDX-License-Identifier: Apache-2.0
//
// JSON export/import of scenarios and priors for regression fixtures.
// Complex numbers are [re, im] pairs; matrices are arrays of rows.
#pragma once

#include <string>

#include "edge_state.hpp"
#include "system_model.hpp"

namespace jacdep {

std::string scenario_to_json(const NetworkScenario& s);
NetworkScenario scenario_from_json(const std::string& text);

std::string priors_to_json(const Priors& p);
Priors priors_from_json(const std::string& text);

}  // namespace jacdep
