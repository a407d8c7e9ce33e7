// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <optional>
#include <string>

namespace glsreg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Interval of integrability exponents p. The lower end is >= 1 and may be
/// open or closed; the upper end is open unless `upper_open` is cleared,
/// which only tabulated data uses (a table has a last grid point).
struct ExponentInterval {
  double lower = 1.0;
  double upper = kInf;
  bool lower_open = false;
  bool upper_open = true;

  /// Throws Error(kInvalidArgument) when lower < 1 or upper <= lower.
  static ExponentInterval make(double lower, double upper, bool lower_open = false,
                               bool upper_open = true);
  static ExponentInterval from_one() { return {}; }

  bool contains(double p) const noexcept;
  bool bounded() const noexcept { return upper < kInf; }

  std::string describe() const;
};

/// Intersection of two intervals; nullopt when empty.
std::optional<ExponentInterval> intersect(const ExponentInterval& a, const ExponentInterval& b);

}  // namespace glsreg
