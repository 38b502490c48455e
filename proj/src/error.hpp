// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace jacdep {

enum class ErrorCode {
  kSingularCovariance,
  kImproperMessage,
  kDimensionMismatch,
  kZeroScale,
  kAllZeroWeights,
  kEtaOutOfRange,
  kAllNegInfinity,
  kSupportMismatch,
  kMissingPrior,
  kMissingScenario,
  kNonSquareL,
  kNonPositiveDistance,
  kRhoOutOfRange,
  kNonPsdCorrelation,
  kEmptyCodebook,
  kZeroPilotSymbol,
  kImproperIncoming,
  kConfigMismatch,
  kLengthMismatch,
  kEmptyInput,
  kParseError,
  kUnknownKey,
  kRangeError,
  kIoError,
  kNoActiveUsers,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jacdep
