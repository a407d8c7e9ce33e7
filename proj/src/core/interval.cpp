// SPDX-License-Identifier: Apache-2.0
#include "interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace glsreg {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::kEmptyDomain: return "EmptyDomain";
    case ErrorCode::kNoFiniteMoment: return "NoFiniteMoment";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kInvalidExponent: return "InvalidExponent";
    case ErrorCode::kDivergent: return "Divergent";
    case ErrorCode::kToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorCode::kTruncationInfeasible: return "TruncationInfeasible";
    case ErrorCode::kMomentInfinite: return "MomentInfinite";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNonpositiveDelta: return "NonpositiveDelta";
    case ErrorCode::kNonPositiveGenerating: return "NonPositiveGenerating";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

ExponentInterval ExponentInterval::make(double lower, double upper, bool lower_open,
                                        bool upper_open) {
  if (!(lower >= 1.0) || !std::isfinite(lower)) {
    fail(ErrorCode::kInvalidArgument, "exponent interval lower end must be a finite value >= 1");
  }
  if (!(upper > lower)) {
    fail(ErrorCode::kInvalidArgument, "exponent interval upper end must exceed the lower end");
  }
  // An infinite end is always open.
  return ExponentInterval{lower, upper, lower_open, upper_open || std::isinf(upper)};
}

bool ExponentInterval::contains(double p) const noexcept {
  if (!std::isfinite(p)) return false;
  const bool above = lower_open ? p > lower : p >= lower;
  const bool below = upper_open ? p < upper : p <= upper;
  return above && below;
}

std::string ExponentInterval::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << (lower_open ? '(' : '[') << lower << ", ";
  if (std::isinf(upper)) {
    os << "inf)";
  } else {
    os << upper << (upper_open ? ')' : ']');
  }
  return os.str();
}

std::optional<ExponentInterval> intersect(const ExponentInterval& a, const ExponentInterval& b) {
  ExponentInterval out;
  if (a.lower > b.lower) {
    out.lower = a.lower;
    out.lower_open = a.lower_open;
  } else if (b.lower > a.lower) {
    out.lower = b.lower;
    out.lower_open = b.lower_open;
  } else {
    out.lower = a.lower;
    out.lower_open = a.lower_open || b.lower_open;
  }
  if (a.upper < b.upper) {
    out.upper = a.upper;
    out.upper_open = a.upper_open;
  } else if (b.upper < a.upper) {
    out.upper = b.upper;
    out.upper_open = b.upper_open;
  } else {
    out.upper = a.upper;
    out.upper_open = a.upper_open || b.upper_open;
  }
  if (out.upper < out.lower) return std::nullopt;
  if (out.upper == out.lower) return std::nullopt;
  return out;
}

}  // namespace glsreg
