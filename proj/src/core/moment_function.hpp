// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "interval.hpp"

namespace glsreg {

/// 99% two-sided normal quantile used for every confidence half-width.
inline constexpr double kConfidenceZ = 2.576;

enum class MomentSource { kAnalytic, kEmpirical };

struct MomentPoint {
  double p = 0.0;
  double value = 0.0;
  double half_width = 0.0;
};

/// p -> ||f||_p for one random variable (or the pointwise sup over a family).
/// Immutable; copies share the evaluator.
class MomentFunction {
 public:
  using Evaluator = std::function<double(double)>;

  static MomentFunction analytic(ExponentInterval domain, Evaluator value, std::string label);
  /// ||c||_p = |c| for every p >= 1.
  static MomentFunction constant(double c);
  /// Standard exponential variable: ||theta||_p = Gamma(p + 1)^(1/p).
  static MomentFunction standard_exponential();
  /// |N(0,1)|: ||g||_p = (2^(p/2) Gamma((p+1)/2) / sqrt(pi))^(1/p).
  static MomentFunction standard_normal();
  /// Table on a p-grid; log-linear interpolation between points, no
  /// extrapolation. Points must have strictly increasing p.
  static MomentFunction tabulated(std::vector<MomentPoint> points, MomentSource source,
                                  std::size_t sample_count, std::string label = "table");
  /// Pointwise supremum over a family, on the intersection of the domains.
  static MomentFunction pointwise_max(std::span<const MomentFunction> family);

  /// Moments of c * f.
  MomentFunction scaled(double c) const;

  /// ||f||_p; +inf outside the domain.
  double value(double p) const;
  /// Confidence half-width at p (0 for analytic sources).
  double half_width(double p) const;

  const ExponentInterval& domain() const { return state_->domain; }
  MomentSource source() const { return state_->source; }
  std::size_t sample_count() const { return state_->sample_count; }
  const std::string& label() const { return state_->label; }
  /// Grid points for tabulated functions, empty otherwise.
  const std::vector<MomentPoint>& table() const { return state_->table; }

 private:
  struct State {
    ExponentInterval domain;
    MomentSource source = MomentSource::kAnalytic;
    std::size_t sample_count = 0;
    std::string label;
    Evaluator value;
    Evaluator half_width;
    std::vector<MomentPoint> table;
  };
  explicit MomentFunction(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;
};

struct MomentValidation {
  bool nondecreasing = true;
  bool log_convex = true;  // only checked for analytic sources
  std::string detail;
};

/// Lyapunov monotonicity (tolerance 2 half-widths) and, for analytic sources,
/// convexity of p -> p ln ||f||_p on a 64-point grid.
MomentValidation validate_moments(const MomentFunction& moments);

/// (mean |x|^p)^(1/p) on each grid point with a delta-method half-width.
/// Sums are taken relative to the largest magnitude so large p cannot overflow.
MomentFunction empirical_moments(std::span<const double> samples, std::span<const double> p_grid);

/// Single-point version of empirical_moments.
MomentPoint empirical_moment(std::span<const double> samples, double p);

struct TailEstimate {
  double value = 0.0;
  double half_width = 0.0;
};

/// Fraction of |x| >= t with an Agresti-Coull binomial half-width.
TailEstimate empirical_tail(std::span<const double> samples, double t);

enum class TailKind { kExact, kUpperBound, kEmpirical };

struct TailPoint {
  double t = 0.0;
  double value = 0.0;
  double half_width = 0.0;
};

/// t -> P(|f| >= t): exact, an upper bound, or an empirical estimate.
class TailFunction {
 public:
  using Evaluator = std::function<TailEstimate(double)>;

  static TailFunction exact(std::function<double(double)> fn);
  static TailFunction upper_bound(std::function<double(double)> fn);
  /// Keeps a sorted copy of the magnitudes.
  static TailFunction empirical(std::span<const double> samples);

  TailEstimate operator()(double t) const { return eval_(t); }
  TailKind kind() const { return kind_; }
  std::size_t sample_count() const { return samples_; }

  std::vector<TailPoint> tabulate(std::span<const double> t_grid) const;

 private:
  TailFunction(Evaluator e, TailKind k, std::size_t m) : eval_(std::move(e)), kind_(k), samples_(m) {}
  Evaluator eval_;
  TailKind kind_;
  std::size_t samples_;
};

}  // namespace glsreg
