// SPDX-License-Identifier: Apache-2.0
//
// Joint activity, channel and data detection over pilots and payload. Each
// sweep runs the ten update lines in order; every line updates all of its
// (l, k, t) instances before the next line starts.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edge_state.hpp"
#include "ep_kernels.hpp"

namespace jacdep {

struct JacdResult {
  std::vector<std::uint8_t> u_hat;
  std::vector<CategoricalMessage> p_hat_u;
  std::vector<CVector> h_hat;            // l * K + k
  Eigen::MatrixXi x_hat;                 // K x Td constellation indices
  std::vector<CategoricalMessage> p_hat_x;  // k * Td + (t - Tp)
  std::int64_t fronthaul_reals_per_iter = 0;
  std::int64_t fronthaul_reals_total = 0;
};

EpOptions jacd_options(const SimConfig& config);

/// Real numbers crossing the AP/CPU boundary per sweep: 2 L K (Td (M - 1) + 1).
std::int64_t fronthaul_load(int L, int K, int Td, int M);

/// Hypotheses and their log prior weights for (l, k, t): the pilot alone for
/// t < Tp, otherwise the constellation weighted by x -> Psi_z.
SymbolConditioned jacd_symbol_conditioned(const EdgeStateJACD& st, const NetworkScenario& s, int l,
                                          int k, int t, std::vector<double>& log_w);

GaussianMoment jacd_update_psi_y_to_z(const EdgeStateJACD& st, const NetworkScenario& s, int l, int k,
                                      int t, const EpOptions& opt);
std::optional<CategoricalMessage> jacd_update_psi_z_to_x(const EdgeStateJACD& st,
                                                         const NetworkScenario& s, int l, int k, int t);
CategoricalMessage jacd_update_x_to_psi_z(const EdgeStateJACD& st, int l, int k, int t);
std::optional<GaussianNatural> jacd_update_psi_z_to_g(const EdgeStateJACD& st,
                                                      const NetworkScenario& s, int l, int k, int t);
GaussianNatural jacd_update_g_to_psi_g(const EdgeStateJACD& st, int l, int k);
std::optional<CategoricalMessage> jacd_update_psi_g_to_u(const EdgeStateJACD& st, const Priors& p,
                                                         int l, int k);
CategoricalMessage jacd_update_u_to_psi_g(const EdgeStateJACD& st, const Priors& p, int l, int k);
std::optional<GaussianNatural> jacd_update_psi_g_to_g(const EdgeStateJACD& st, const Priors& p,
                                                      int l, int k);
/// Empty when Psi_g -> g is a point mass; the line then forwards that message.
std::optional<GaussianNatural> jacd_update_g_to_psi_z(const EdgeStateJACD& st, int l, int k, int t);
std::optional<GaussianNatural> jacd_update_psi_z_to_z(const EdgeStateJACD& st,
                                                      const NetworkScenario& s, int l, int k, int t);

/// One sweep in place; returns the number of fronthaul reals exchanged.
std::int64_t jacd_sweep(EdgeStateJACD& st, const NetworkScenario& s, const Priors& p,
                        const EpOptions& opt);
JacdResult jacd_estimate(const EdgeStateJACD& st, const NetworkScenario& s, const Priors& p);
JacdResult jacd_run(const NetworkScenario& s, const Priors& p, const EpOptions& opt);

}  // namespace jacdep
