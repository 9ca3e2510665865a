#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regmatch {

enum class ErrorCode {
  kInvalidParameters,
  kInvalidPair,
  kInstanceTooLarge,
  kParseError,
  kInvalidInput,
  kNoGuarantee,
  kNoAugmentingPath,
  kInvalidCollection,
  kUnsupportedInput,
  kInvalidConfiguration,
  kIoError,
};

std::string_view to_string(ErrorCode code);

// Every recoverable failure in the library is reported as an Error carrying
// one of the codes above; the CLI maps them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace regmatch
