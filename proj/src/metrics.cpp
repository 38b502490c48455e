// SPDX-License-Identifier: Apache-2.0
#include "metrics.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace jacdep {

double compute_der(std::span<const std::uint8_t> u_hat, std::span<const std::uint8_t> u_true) {
  if (u_hat.size() != u_true.size()) throw Error(ErrorCode::kLengthMismatch, "activity vectors differ in length");
  if (u_hat.empty()) throw Error(ErrorCode::kEmptyInput, "no activity decisions");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < u_hat.size(); ++i) wrong += (u_hat[i] != 0) != (u_true[i] != 0);
  return static_cast<double>(wrong) / static_cast<double>(u_hat.size());
}

std::optional<double> nmse_ratio(const NetworkScenario& s, std::span<const CVector> h_hat, int k) {
  if (h_hat.size() != static_cast<std::size_t>(s.L * s.K)) {
    throw Error(ErrorCode::kLengthMismatch, "channel estimates do not cover L x K");
  }
  double err = 0.0;
  double ref = 0.0;
  bool any = false;
  for (int l = 0; l < s.L; ++l) {
    if (s.sigma_x2 * s.xi(l, k) < s.sigma_n2) continue;
    any = true;
    const CVector h = s.channel(l, k);
    err += (h_hat[static_cast<std::size_t>(l * s.K + k)] - h).squaredNorm();
    ref += h.squaredNorm();
  }
  if (!any || ref == 0.0) return std::nullopt;
  return std::sqrt(err) / std::sqrt(ref);
}

std::optional<double> compute_nmse(std::span<const double> ratios) {
  if (ratios.empty()) return std::nullopt;
  double acc = 0.0;
  for (double r : ratios) acc += r;
  return acc / static_cast<double>(ratios.size());
}

SymbolErrors count_symbol_errors(const Eigen::MatrixXi& x_hat, const Eigen::MatrixXi& x_true,
                                 std::span<const std::uint8_t> u_true, int k) {
  if (x_hat.rows() != x_true.rows() || x_hat.cols() != x_true.cols() ||
      u_true.size() != static_cast<std::size_t>(x_true.rows())) {
    throw Error(ErrorCode::kLengthMismatch, "symbol tables differ in shape");
  }
  SymbolErrors e;
  if (!u_true[static_cast<std::size_t>(k)]) return e;
  for (Eigen::Index t = 0; t < x_true.cols(); ++t) {
    e.errors += x_hat(k, t) != x_true(k, t);
    e.symbols += 1;
  }
  return e;
}

std::optional<double> compute_ser(const Eigen::MatrixXi& x_hat, const Eigen::MatrixXi& x_true,
                                  std::span<const std::uint8_t> u_true) {
  SymbolErrors total;
  for (int k = 0; k < static_cast<int>(x_true.rows()); ++k) {
    const SymbolErrors e = count_symbol_errors(x_hat, x_true, u_true, k);
    total.errors += e.errors;
    total.symbols += e.symbols;
  }
  if (total.symbols == 0) return std::nullopt;
  return static_cast<double>(total.errors) / static_cast<double>(total.symbols);
}

std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "empirical CDF of nothing");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> out;
  const double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i + 1 < v.size() && v[i + 1] == v[i]) continue;
    out.emplace_back(v[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "median of nothing");
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

BootstrapInterval paired_bootstrap_median_diff(std::span<const double> a, std::span<const double> b,
                                               int resamples, double confidence, std::uint64_t seed) {
  if (a.size() != b.size()) throw Error(ErrorCode::kLengthMismatch, "paired samples differ in length");
  if (a.empty()) throw Error(ErrorCode::kEmptyInput, "bootstrap of nothing");
  if (resamples < 1 || !(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::kRangeError, "bad bootstrap parameters");
  }
  BootstrapInterval out;
  out.estimate = median({a.begin(), a.end()}) - median({b.begin(), b.end()});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
  std::vector<double> diffs(static_cast<std::size_t>(resamples));
  std::vector<double> ra(a.size()), rb(b.size());
  for (auto& d : diffs) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::size_t j = pick(rng);
      ra[i] = a[j];
      rb[i] = b[j];
    }
    d = median(ra) - median(rb);
  }
  std::sort(diffs.begin(), diffs.end());
  const double tail = (1.0 - confidence) / 2.0;
  const auto at = [&](double q) {
    const double pos = q * static_cast<double>(diffs.size() - 1);
    return diffs[static_cast<std::size_t>(std::lround(pos))];
  };
  out.lower = at(tail);
  out.upper = at(1.0 - tail);
  return out;
}

}  // namespace jacdep
