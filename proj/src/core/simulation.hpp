// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "batch.hpp"
#include "json.hpp"
#include "regulator_bounds.hpp"
#include "rng.hpp"

namespace glsreg {

enum class ModelKind { kExponentialPower, kGaussianPower, kEnvelopeOnly };

/// Z_n = theta_n / n^alpha (exponential theta) or |g_n| / n^alpha (normal g),
/// or an envelope with no generator.
class SequenceModel {
 public:
  static SequenceModel exponential_power(double alpha, std::int64_t index_start = 1);
  static SequenceModel gaussian_power(double alpha, std::int64_t index_start = 1);
  static SequenceModel envelope_only(MomentEnvelope env);

  /// {"kind": "exponential_power" | "gaussian_power", "alpha", "index_start"?}
  /// or {"kind": "envelope_only", "alpha", "K": <generating spec>, "index_start"?}.
  static SequenceModel from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;

  ModelKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::int64_t index_start() const { return index_start_; }
  bool generative() const { return kind_ != ModelKind::kEnvelopeOnly; }
  /// K(p) = ||Z_n n^alpha||_p exactly for the generative models.
  MomentEnvelope envelope() const;

  /// |Z_n| n^alpha for one draw.
  double innovation(const DrawStream& s, std::uint64_t trajectory, std::int64_t n) const;

  std::string name() const;

 private:
  ModelKind kind_ = ModelKind::kExponentialPower;
  double alpha_ = 1.0;
  std::int64_t index_start_ = 1;
  std::optional<MomentEnvelope> env_;
};

struct Truncation {
  /// Fixed last index when set; otherwise chosen from rho and u_min.
  std::optional<std::int64_t> horizon;
  /// Target for P(sup over discarded n > u_min); <= 0 selects 1e-3 / M.
  double rho = 0.0;
  double u_min = 1.0;

  static Truncation fixed(std::int64_t last_index) { return {last_index, 0.0, 1.0}; }
  static Truncation target(double rho, double u_min) { return {std::nullopt, rho, u_min}; }
};

struct SimulationPlan {
  SequenceModel model = SequenceModel::exponential_power(1.0);
  double eps = 0.5;
  std::int64_t trajectories = 1000;
  Truncation truncation;
  std::uint64_t seed = 42;
  std::vector<double> p_grid;
  std::vector<double> u_grid;
  int threads = 0;

  /// Errors: kInvalidEpsilon, kInvalidArgument.
  void validate() const;
  double effective_rho() const;
  static SimulationPlan from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;
};

struct EtaSample {
  double value = 0.0;
  /// Bound on P(sup over the discarded indices exceeds `value`).
  double truncation_bound = 0.0;
};

struct EtaRun {
  std::vector<EtaSample> samples;
  std::int64_t horizon = 0;
  double rho = 0.0;
  double u_min = 1.0;
  /// Bound on P(sup over the discarded indices exceeds u_min).
  double truncation_bound = 0.0;

  std::vector<double> values() const;
};

/// Smallest last index N >= index_start whose discarded-tail bound at u_min
/// is <= rho: the exact exponential sum for ExponentialPower, the Tchebychev
/// tail sum (optimised over p) otherwise.
/// Errors: kTruncationInfeasible past 1e7.
std::int64_t choose_horizon(const SequenceModel& model, double eps, double rho, double u_min);

/// Bound on P(sup_{n > N} n^(alpha - eps) |Z_n| > u), clamped to [0, 1].
double discarded_tail_bound(const SequenceModel& model, double eps, std::int64_t horizon, double u);

/// M realisations of sup_{index_start <= n <= N} n^(alpha - eps) |Z_n|.
/// Deterministic in the seed and independent of the thread count.
/// Errors: kInvalidEpsilon, kInvalidArgument, kTruncationInfeasible.
EtaRun simulate_eta(const SimulationPlan& plan);

/// The M x (N - index_start + 1) matrix of |Z_n| drawn from the same streams
/// as simulate_eta.
TrajectoryBatch simulate_batch(const SequenceModel& model, std::int64_t trajectories,
                               std::int64_t horizon, std::uint64_t seed, int threads = 0);

/// The delta sequence n^-(alpha - eps) used to build eta from |Z_n|.
SequenceSpec regulator_weights(double alpha, double eps);

/// Integral-test bound: sum_{n > N} e^(-u n^eps) <= Gamma(1/eps, u N^eps) / (eps u^(1/eps)).
double exponential_sum_tail(double u, double eps, std::int64_t N);

/// 1 - prod_{n >= index_start} (1 - e^(-u n^eps)), truncated once the
/// discarded factors move the result by less than abs_tol.
/// Errors: kInvalidEpsilon, kDomainError (u <= 0).
double exact_eta_tail(double alpha, double eps, double u, double abs_tol,
                      std::int64_t index_start = 1);

struct BonferroniSums {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  /// Certified bound on what truncation dropped from sigma1.
  double remainder = 0.0;
  std::int64_t terms = 0;
};

/// sigma1 = sum_n e^(-u n^eps), sigma2 = sum over pairs n < m of the products.
/// sigma2 uses the pair-product identity in its running-prefix form.
/// Errors: kDomainError (u <= 0 or eps outside (0, 1)).
BonferroniSums bonferroni_sums(double eps, double u, double abs_tol, std::int64_t index_start = 1);

/// Gamma(1 + 1/eps). Errors: kDomainError unless 0 < eps < 1.
double asymptotic_tail_constant(double eps);

/// (int_0^inf p u^(p-1) P(eta > u) du)^(1/p) by adaptive Gauss-Kronrod with a
/// certified bound on the discarded upper range.
/// Errors: kMomentInfinite if p >= 1/eps; kInvalidExponent if p < 1.
double exact_eta_moment(double alpha, double eps, double p, double rel_tol,
                        std::int64_t index_start = 1);

/// Bound on E sup_{m > N} x_m / (1 + x_m) for the ExponentialPower model,
/// NaN for models without one.
double criterion_remainder_bound(const SequenceModel& model, std::int64_t horizon);

}  // namespace glsreg
