#include "regmatch/error.hpp"

namespace regmatch {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameters: return "invalid-parameters";
    case ErrorCode::kInvalidPair: return "invalid-pair";
    case ErrorCode::kInstanceTooLarge: return "instance-too-large";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kNoGuarantee: return "no-guarantee";
    case ErrorCode::kNoAugmentingPath: return "no-augmenting-path";
    case ErrorCode::kInvalidCollection: return "invalid-collection";
    case ErrorCode::kUnsupportedInput: return "unsupported-input";
    case ErrorCode::kInvalidConfiguration: return "invalid-configuration";
    case ErrorCode::kIoError: return "io-error";
  }
  return "unknown";
}

}  // namespace regmatch
