// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace glsreg {

enum class SequenceForm { kPowerLog, kPowerSlowlyVarying, kGeometric };

/// A positive deterministic sequence
///   s_n = scale * base^n * n^(-alpha) * ln(n+1)^m * L(n)
/// restricted to three forms: PowerLog (base 1, no table), PowerSlowlyVarying
/// (base 1, m 0, tabulated L held constant past the table) and Geometric
/// (alpha = m = 0, base q in (0, 1)).
class SequenceSpec {
 public:
  static SequenceSpec power_log(double alpha, double m, double scale = 1.0);
  /// `table` holds (n, L(n)) with strictly increasing n >= 1 and L > 0;
  /// log-log interpolation between entries, constant outside.
  static SequenceSpec power_slowly_varying(double alpha, std::vector<std::pair<double, double>> table,
                                           double scale = 1.0);
  static SequenceSpec geometric(double q, double scale = 1.0);

  /// Forms: {"form":"power_log","alpha","m"} (or "theta","nu" for beta_n =
  /// n^-theta ln^-nu(n+1)), {"form":"power_slowly_varying","alpha","table"},
  /// {"form":"geometric","q"} (or "Q"); optional "scale" on all forms.
  static SequenceSpec from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;

  double value(std::int64_t n) const;
  double log_value(std::int64_t n) const;
  /// L(n) for slowly varying forms, 1 otherwise.
  double slowly_varying(double n) const;

  SequenceForm form() const { return form_; }
  double scale() const { return scale_; }
  double base() const { return base_; }
  double alpha() const { return alpha_; }
  double log_power() const { return m_; }
  const std::vector<std::pair<double, double>>& table() const { return table_; }
  /// Last tabulated n (0 when there is no table).
  double table_end() const { return table_.empty() ? 0.0 : table_.back().first; }
  /// True when the sequence is defined at n = 0 (pure geometric).
  bool defined_at_zero() const { return alpha_ == 0.0 && m_ == 0.0 && table_.empty(); }
  std::string describe() const;

 private:
  SequenceForm form_ = SequenceForm::kPowerLog;
  double scale_ = 1.0;
  double base_ = 1.0;
  double alpha_ = 0.0;
  double m_ = 0.0;
  std::vector<std::pair<double, double>> table_;
};

/// (eps_n, beta_n) with ratio r_n = eps_n / beta_n.
class DecaySequencePair {
 public:
  /// Errors: kInvalidArgument when a geometric pair has delta = q/Q outside (0, 1).
  DecaySequencePair(SequenceSpec eps, SequenceSpec beta);
  /// {"eps": {...}, "beta": {...}}.
  static DecaySequencePair from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;

  const SequenceSpec& eps() const { return eps_; }
  const SequenceSpec& beta() const { return beta_; }

  /// 0 when both sequences are geometric, 1 otherwise.
  std::int64_t first_index() const { return first_; }
  bool geometric_pair() const;
  /// q/Q for geometric pairs.
  double delta() const;

  /// log r_n.
  double log_ratio(std::int64_t n) const;
  /// Growth base of r_n (base_eps / base_beta), power and log exponents.
  double ratio_base() const { return eps_.base() / beta_.base(); }
  double ratio_power() const { return eps_.alpha() - beta_.alpha(); }
  double ratio_log_power() const { return eps_.log_power() - beta_.log_power(); }
  /// Past both tables the ratio is C * g^n n^-s0 ln^k0(n+1); this is ln C.
  double log_tail_constant() const;
  double table_end() const { return std::max(eps_.table_end(), beta_.table_end()); }

  /// Infimum of exponents p with sum r_n^p finite, and whether the infimum
  /// itself is excluded.
  std::pair<double, bool> convergence_threshold() const;
  bool summable(double p) const;

 private:
  SequenceSpec eps_;
  SequenceSpec beta_;
  std::int64_t first_ = 1;
};

}  // namespace glsreg
