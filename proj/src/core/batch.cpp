// SPDX-License-Identifier: Apache-2.0
#include "batch.hpp"

#include <cmath>

#include "error.hpp"

namespace glsreg {

TrajectoryBatch TrajectoryBatch::make(std::int64_t trajectories, std::int64_t length,
                                      std::int64_t index_start, std::vector<double> values) {
  if (trajectories < 1 || length < 1) fail(ErrorCode::kInvalidArgument, "batch needs M >= 1 and N >= 1");
  if (static_cast<std::int64_t>(values.size()) != trajectories * length) {
    fail(ErrorCode::kInvalidArgument, "batch values do not match M x N");
  }
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorCode::kInvalidArgument, "batch entries must be finite");
  }
  TrajectoryBatch b;
  b.trajectories = trajectories;
  b.length = length;
  b.index_start = index_start;
  b.values = std::move(values);
  return b;
}

TrajectoryBatch TrajectoryBatch::prefix(std::int64_t columns) const {
  if (columns < 1 || columns > length) fail(ErrorCode::kIndexOutOfRange, "prefix length out of range");
  TrajectoryBatch b;
  b.trajectories = trajectories;
  b.length = columns;
  b.index_start = index_start;
  b.seed = seed;
  b.provenance = provenance;
  b.values.reserve(static_cast<std::size_t>(trajectories * columns));
  for (std::int64_t i = 0; i < trajectories; ++i) {
    const auto r = row(i);
    b.values.insert(b.values.end(), r.begin(), r.begin() + columns);
  }
  return b;
}

}  // namespace glsreg
