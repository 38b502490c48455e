// SPDX-License-Identifier: Apache-2.0
#include "categorical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "error.hpp"

namespace jacdep {
namespace {

void require_support(std::size_t n) {
  if (n < 1 || n > static_cast<std::size_t>(kMaxSupport)) {
    throw Error(ErrorCode::kSupportMismatch,
                "support size " + std::to_string(n) + " outside [1, " +
                    std::to_string(kMaxSupport) + "]");
  }
}

}  // namespace

CategoricalMessage CategoricalMessage::uniform(int size) {
  require_support(static_cast<std::size_t>(size));
  CategoricalMessage m;
  m.log_p_ = LogWeights::Constant(size, -std::log(static_cast<double>(size)));
  m.informative_ = false;
  return m;
}

CategoricalMessage CategoricalMessage::from_log_weights(std::span<const double> log_weights) {
  require_support(log_weights.size());
  double max_lw = -std::numeric_limits<double>::infinity();
  for (double lw : log_weights) {
    if (std::isnan(lw) || lw == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::kAllNegInfinity, "log-weight is NaN or +inf");
    }
    max_lw = std::max(max_lw, lw);
  }
  if (!std::isfinite(max_lw)) {
    throw Error(ErrorCode::kAllNegInfinity, "every log-weight is -inf");
  }
  double total = 0.0;
  for (double lw : log_weights) total += std::exp(lw - max_lw);
  const double log_total = max_lw + std::log(total);

  CategoricalMessage m;
  m.log_p_.resize(static_cast<Eigen::Index>(log_weights.size()));
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    m.log_p_(static_cast<Eigen::Index>(i)) = log_weights[i] - log_total;
  }
  return m;
}

CategoricalMessage CategoricalMessage::from_weights(std::span<const double> weights) {
  std::vector<double> lw(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::kAllNegInfinity, "weights must be finite and nonnegative");
    }
    lw[i] = std::log(weights[i]);
  }
  return from_log_weights(lw);
}

double CategoricalMessage::prob(int i) const { return std::exp(log_p_(i)); }

std::vector<double> CategoricalMessage::probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) p[static_cast<std::size_t>(i)] = prob(i);
  return p;
}

int CategoricalMessage::argmax() const {
  int best = 0;
  for (int i = 1; i < size(); ++i) {
    if (log_p_(i) > log_p_(best)) best = i;
  }
  return best;
}

CategoricalMessage categorical_normalize(std::span<const double> log_weights) {
  return CategoricalMessage::from_log_weights(log_weights);
}

CategoricalMessage categorical_product(std::span<const CategoricalMessage> messages,
                                       int support_size) {
  require_support(static_cast<std::size_t>(support_size));
  if (messages.empty()) return CategoricalMessage::uniform(support_size);
  double acc[kMaxSupport] = {};
  for (const CategoricalMessage& m : messages) {
    if (m.size() != support_size) {
      throw Error(ErrorCode::kSupportMismatch, "categorical_product over different supports");
    }
    for (int i = 0; i < support_size; ++i) acc[i] += m.log_prob(i);
  }
  return CategoricalMessage::from_log_weights(
      std::span<const double>(acc, static_cast<std::size_t>(support_size)));
}

CategoricalMessage damp_categorical(const CategoricalMessage& old_msg,
                                    const CategoricalMessage& new_msg, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorCode::kEtaOutOfRange, "damping factor must lie in [0, 1]");
  }
  if (old_msg.size() != new_msg.size()) {
    throw Error(ErrorCode::kSupportMismatch, "damping messages over different supports");
  }
  if (eta == 1.0) return new_msg;
  if (eta == 0.0) return old_msg;
  double w[kMaxSupport];
  for (int i = 0; i < new_msg.size(); ++i) {
    w[i] = eta * new_msg.prob(i) + (1.0 - eta) * old_msg.prob(i);
  }
  return CategoricalMessage::from_weights(
      std::span<const double>(w, static_cast<std::size_t>(new_msg.size())));
}

}  // namespace jacdep
