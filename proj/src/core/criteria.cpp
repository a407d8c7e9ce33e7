// SPDX-License-Identifier: Apache-2.0
#include "criteria.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "moment_function.hpp"

namespace glsreg {
namespace {

void check_index(const TrajectoryBatch& b, std::int64_t n) {
  if (n < b.index_start || n > b.last_index()) {
    fail(ErrorCode::kIndexOutOfRange, "index " + std::to_string(n) + " outside [" +
                                          std::to_string(b.index_start) + ", " +
                                          std::to_string(b.last_index()) + "]");
  }
}

// Mean and normal half-width, summed in trajectory order.
std::pair<double, double> mean_half_width(const std::vector<double>& v) {
  const double m = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / m;
  double sq = 0.0;
  for (double x : v) sq += (x - mean) * (x - mean);
  const double var = v.size() > 1 ? sq / (m - 1.0) : 0.0;
  return {mean, kConfidenceZ * std::sqrt(var / m)};
}

double bounded(double x) {
  const double a = std::abs(x);
  return a / (1.0 + a);
}

}  // namespace

CriterionEstimate criterion_functional(const TrajectoryBatch& batch, std::int64_t n,
                                       double remainder_bound) {
  check_index(batch, n);
  const std::int64_t from = n - batch.index_start;
  std::vector<double> sups(static_cast<std::size_t>(batch.trajectories));
  for (std::int64_t i = 0; i < batch.trajectories; ++i) {
    double s = 0.0;
    for (std::int64_t j = from; j < batch.length; ++j) s = std::max(s, bounded(batch.at(i, j)));
    sups[static_cast<std::size_t>(i)] = s;
  }
  const auto [mean, hw] = mean_half_width(sups);
  return {mean, hw, true, batch.last_index(), remainder_bound};
}

std::vector<CriterionEstimate> criterion_profile(const TrajectoryBatch& batch, double remainder_bound) {
  // Suffix maxima per trajectory, accumulated column by column from the end.
  const auto m = static_cast<std::size_t>(batch.trajectories);
  const auto len = static_cast<std::size_t>(batch.length);
  std::vector<double> running(m, 0.0);
  std::vector<CriterionEstimate> out(len);
  for (std::size_t j = len; j-- > 0;) {
    for (std::size_t i = 0; i < m; ++i) {
      running[i] = std::max(running[i], bounded(batch.at(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j))));
    }
    const auto [mean, hw] = mean_half_width(running);
    out[j] = {mean, hw, true, batch.last_index(), remainder_bound};
  }
  return out;
}

CriterionEstimate union_criterion(const TrajectoryBatch& batch, double eps, std::int64_t n) {
  if (!(eps > 0.0)) fail(ErrorCode::kDomainError, "eps must be positive");
  check_index(batch, n);
  const std::int64_t from = n - batch.index_start;
  std::vector<double> hits(static_cast<std::size_t>(batch.trajectories), 0.0);
  for (std::int64_t i = 0; i < batch.trajectories; ++i) {
    for (std::int64_t j = from; j < batch.length; ++j) {
      if (std::abs(batch.at(i, j)) <= eps) {
        hits[static_cast<std::size_t>(i)] = 1.0;
        break;
      }
    }
  }
  const auto [mean, hw] = mean_half_width(hits);
  return {mean, hw, true, batch.last_index(), std::nan("")};
}

double rho_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::kLengthMismatch, "paired samples differ in length");
  if (x.empty()) fail(ErrorCode::kEmptySample, "rho distance needs at least one pair");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += bounded(x[i] - y[i]);
  return sum / static_cast<double>(x.size());
}

RegulatorExtraction extract_regulator(const TrajectoryBatch& batch, const SequenceSpec& delta) {
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(batch.length));
  for (std::int64_t n = batch.index_start; n <= batch.last_index(); ++n) {
    const double v = delta.value(n);
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorCode::kNonpositiveDelta, "delta_n is not positive at n = " + std::to_string(n));
    }
    d.push_back(v);
  }
  RegulatorExtraction out{std::vector<double>(static_cast<std::size_t>(batch.trajectories)), delta};
  for (std::int64_t i = 0; i < batch.trajectories; ++i) {
    double u = 0.0;
    for (std::int64_t j = 0; j < batch.length; ++j) {
      u = std::max(u, regulator_ratio(batch.at(i, j), d[static_cast<std::size_t>(j)]));
    }
    out.values[static_cast<std::size_t>(i)] = u;
  }
  return out;
}

}  // namespace glsreg
