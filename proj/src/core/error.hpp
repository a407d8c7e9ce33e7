// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace glsreg {

// Numeric values are part of the C ABI (see glsreg.h); append only.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kInvalidEpsilon = 2,
  kEmptyDomain = 3,
  kNoFiniteMoment = 4,
  kDomainError = 5,
  kEmptySample = 6,
  kInvalidExponent = 7,
  kDivergent = 8,
  kToleranceUnreachable = 9,
  kTruncationInfeasible = 10,
  kMomentInfinite = 11,
  kIndexOutOfRange = 12,
  kLengthMismatch = 13,
  kNonpositiveDelta = 14,
  kNonPositiveGenerating = 15,
  kConfigError = 16,
  kIoError = 17,
  kInternal = 18,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace glsreg
