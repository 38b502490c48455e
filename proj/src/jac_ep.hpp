// SPDX-License-Identifier: Apache-2.0
//
// Pilot-only activity and channel estimation. Produces the activity and
// channel priors that seed the joint stage.
#pragma once

#include <optional>
#include <vector>

#include "edge_state.hpp"
#include "ep_kernels.hpp"

namespace jacdep {

struct JacResult {
  std::vector<std::uint8_t> u_hat;
  std::vector<CategoricalMessage> p_hat_u;
  std::vector<CVector> h_hat;  // l * K + k
  Priors priors;
};

EpOptions jac_options(const SimConfig& config);

// Single-instance message computations. They only read the state.
GaussianNatural jac_update_g_to_psi_y(const EdgeStateJAC& st, int l, int k, int t);
GaussianMoment jac_update_psi_y_to_g(const EdgeStateJAC& st, const NetworkScenario& s, int l, int k,
                                     int t, bool pc_correction, bool xi_of_interferer = false);
GaussianNatural jac_update_g_to_psi_g(const EdgeStateJAC& st, int l, int k);
/// Empty when g -> Psi_g has no PD covariance yet.
std::optional<CategoricalMessage> jac_update_psi_g_to_u(const EdgeStateJAC& st,
                                                        const NetworkScenario& s, int l, int k);
CategoricalMessage jac_update_u_to_psi_g(const EdgeStateJAC& st, int l, int k, double lambda);
/// Empty when the guard rejects the update.
std::optional<GaussianNatural> jac_update_psi_g_to_g(const EdgeStateJAC& st,
                                                     const NetworkScenario& s, int l, int k);

/// One sweep of the schedule, in place.
void jac_sweep(EdgeStateJAC& st, const NetworkScenario& s, const EpOptions& opt);
JacResult jac_estimate(const EdgeStateJAC& st, const NetworkScenario& s);
JacResult jac_ep_run(const NetworkScenario& s, const EpOptions& opt);

}  // namespace jacdep
