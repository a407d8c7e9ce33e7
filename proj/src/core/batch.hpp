// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

namespace glsreg {

/// |x| / d nudged up until (|x| / d) * d >= |x| holds in floating point, so a
/// regulator built from these ratios factorises every entry exactly.
inline double regulator_ratio(double x, double d) {
  const double a = std::abs(x);
  double q = a / d;
  while (q * d < a) q = std::nextafter(q, HUGE_VAL);
  return q;
}

/// M trajectories of N consecutive indices index_start, ..., index_start + N - 1,
/// stored row-major.
struct TrajectoryBatch {
  std::int64_t trajectories = 0;
  std::int64_t length = 0;
  std::int64_t index_start = 1;
  std::vector<double> values;
  std::uint64_t seed = 0;
  nlohmann::json provenance = nlohmann::json::object();

  /// Errors: kInvalidArgument on a size mismatch, empty shape, or non-finite entry.
  static TrajectoryBatch make(std::int64_t trajectories, std::int64_t length,
                              std::int64_t index_start, std::vector<double> values);

  std::int64_t last_index() const { return index_start + length - 1; }
  double at(std::int64_t trajectory, std::int64_t column) const {
    return values[static_cast<std::size_t>(trajectory * length + column)];
  }
  std::span<const double> row(std::int64_t trajectory) const {
    return {values.data() + trajectory * length, static_cast<std::size_t>(length)};
  }
  /// First `columns` columns of every trajectory.
  TrajectoryBatch prefix(std::int64_t columns) const;
};

}  // namespace glsreg
