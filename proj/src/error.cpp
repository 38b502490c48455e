// SPDX-License-Identifier: Apache-2.0
#include "error.hpp"

namespace jacdep {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kImproperMessage: return "ImproperMessage";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroScale: return "ZeroScale";
    case ErrorCode::kAllZeroWeights: return "AllZeroWeights";
    case ErrorCode::kEtaOutOfRange: return "EtaOutOfRange";
    case ErrorCode::kAllNegInfinity: return "AllNegInfinity";
    case ErrorCode::kSupportMismatch: return "SupportMismatch";
    case ErrorCode::kMissingPrior: return "MissingPrior";
    case ErrorCode::kMissingScenario: return "MissingScenario";
    case ErrorCode::kNonSquareL: return "NonSquareL";
    case ErrorCode::kNonPositiveDistance: return "NonPositiveDistance";
    case ErrorCode::kRhoOutOfRange: return "RhoOutOfRange";
    case ErrorCode::kNonPsdCorrelation: return "NonPSDCorrelation";
    case ErrorCode::kEmptyCodebook: return "EmptyCodebook";
    case ErrorCode::kZeroPilotSymbol: return "ZeroPilotSymbol";
    case ErrorCode::kImproperIncoming: return "ImproperIncoming";
    case ErrorCode::kConfigMismatch: return "ConfigMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownKey: return "UnknownKey";
    case ErrorCode::kRangeError: return "RangeError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNoActiveUsers: return "NoActiveUsers";
  }
  return "Unknown";
}

}  // namespace jacdep
