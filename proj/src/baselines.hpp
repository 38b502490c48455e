// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "system_model.hpp"

namespace jacdep {

/// Centralized linear MMSE data detection with the true channels and
/// activities. Rows of inactive users are -1. When nobody is active both
/// matrices are empty.
struct GenieResult {
  Eigen::MatrixXi x_hat;   // K x Td constellation indices
  Eigen::MatrixXcd soft;   // K x Td filter outputs before slicing
  bool empty() const { return x_hat.size() == 0; }
};

GenieResult genie_mmse_detect(const NetworkScenario& s);

/// Stacked LN x K channel matrix, AP blocks in order.
Eigen::MatrixXcd stacked_channels(const NetworkScenario& s);

}  // namespace jacdep
