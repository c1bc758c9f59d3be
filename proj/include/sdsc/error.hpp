#pragma once

#include <stdexcept>
#include <string>

namespace sdsc {

// Stable numeric values; the foreign-function layer reports these verbatim.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kLengthMismatch = 2,
  kEmptyInput = 3,
  kNonFinite = 4,
  kParse = 5,
  kIo = 6,
  kInsufficientSamples = 7,
  kInsufficientBandSamples = 8,
};

const char *to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char *to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kLengthMismatch: return "length mismatch";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kNonFinite: return "non-finite value";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kInsufficientSamples: return "insufficient samples";
    case ErrorCode::kInsufficientBandSamples: return "insufficient samples in band";
  }
  return "unknown error";
}

} // namespace sdsc
