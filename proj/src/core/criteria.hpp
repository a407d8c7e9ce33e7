// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "batch.hpp"
#include "sequence.hpp"

namespace glsreg {

struct CriterionEstimate {
  double value = 0.0;
  double half_width = 0.0;
  /// Every estimate stops at the batch's last index.
  bool truncated = true;
  std::int64_t truncated_at = 0;
  /// Bound on what the discarded indices could add (NaN when unknown).
  double remainder_bound = 0.0;
};

/// Mean over trajectories of max_{n <= m <= N} |x_m| / (1 + |x_m|): a lower
/// estimate of the infinite-horizon functional.
/// Errors: kIndexOutOfRange unless index_start <= n <= last index.
CriterionEstimate criterion_functional(const TrajectoryBatch& batch, std::int64_t n,
                                       double remainder_bound = 0.0);

/// criterion_functional for every n on the batch, in index order.
std::vector<CriterionEstimate> criterion_profile(const TrajectoryBatch& batch,
                                                 double remainder_bound = 0.0);

/// Fraction of trajectories with |x_m| <= eps for some n <= m <= N. This is
/// the union over {|X_m| <= eps} taken literally; the usual almost-sure
/// criterion asks for the intersection instead.
/// Errors: kDomainError (eps <= 0), kIndexOutOfRange.
CriterionEstimate union_criterion(const TrajectoryBatch& batch, double eps, std::int64_t n);

/// Mean of |x - y| / (1 + |x - y|). Errors: kLengthMismatch, kEmptySample.
double rho_distance(std::span<const double> x, std::span<const double> y);

struct RegulatorExtraction {
  std::vector<double> values;  // one per trajectory
  SequenceSpec delta;
};

/// upsilon = max_n |x_n| / delta_n per trajectory, so |x_n| <= upsilon delta_n
/// on the window. Errors: kNonpositiveDelta.
RegulatorExtraction extract_regulator(const TrajectoryBatch& batch, const SequenceSpec& delta);

}  // namespace glsreg
