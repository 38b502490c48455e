// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "gaussian.hpp"
#include "system_model.hpp"

namespace jacdep {

/// Fraction of positions where estimate and truth differ.
double compute_der(std::span<const std::uint8_t> u_hat, std::span<const std::uint8_t> u_true);

/// ||h_hat - h|| / ||h|| for user k over its links with sigma_x^2 xi >= sigma_n^2.
/// Empty when no link qualifies or the stacked channel is zero.
std::optional<double> nmse_ratio(const NetworkScenario& s, std::span<const CVector> h_hat, int k);

/// Average of per-realization ratios over the realizations where the user was
/// active; empty when none contributed.
std::optional<double> compute_nmse(std::span<const double> ratios);

/// Symbol errors over data channel uses of active users; empty if no user is active.
struct SymbolErrors {
  std::int64_t errors = 0;
  std::int64_t symbols = 0;
};
SymbolErrors count_symbol_errors(const Eigen::MatrixXi& x_hat, const Eigen::MatrixXi& x_true,
                                 std::span<const std::uint8_t> u_true, int k);
std::optional<double> compute_ser(const Eigen::MatrixXi& x_hat, const Eigen::MatrixXi& x_true,
                                  std::span<const std::uint8_t> u_true);

/// Sorted distinct values with the fraction of samples <= value.
std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> values);

double median(std::vector<double> values);

/// Percentile interval of median(a) - median(b) under paired resampling.
struct BootstrapInterval {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};
BootstrapInterval paired_bootstrap_median_diff(std::span<const double> a, std::span<const double> b,
                                               int resamples, double confidence, std::uint64_t seed);

}  // namespace jacdep
