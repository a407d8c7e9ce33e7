// SPDX-License-Identifier: Apache-2.0
#include "sequence.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "error.hpp"

namespace glsreg {
namespace {

void check_scale(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    fail(ErrorCode::kInvalidArgument, "sequence scale must be finite and positive");
  }
}

double num(const nlohmann::json& spec, const char* key) {
  const auto& v = spec.at(key);
  if (!v.is_number()) fail(ErrorCode::kConfigError, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

void allow_only(const nlohmann::json& spec, std::initializer_list<const char*> keys) {
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : spec.items()) {
    if (!allowed.count(k)) fail(ErrorCode::kConfigError, "unknown sequence field '" + k + "'");
  }
}

}  // namespace

SequenceSpec SequenceSpec::power_log(double alpha, double m, double scale) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !std::isfinite(m)) {
    fail(ErrorCode::kInvalidArgument, "power_log needs finite alpha > 0 and finite m");
  }
  check_scale(scale);
  SequenceSpec s;
  s.form_ = SequenceForm::kPowerLog;
  s.alpha_ = alpha;
  s.m_ = m;
  s.scale_ = scale;
  return s;
}

SequenceSpec SequenceSpec::power_slowly_varying(double alpha,
                                                std::vector<std::pair<double, double>> table,
                                                double scale) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    fail(ErrorCode::kInvalidArgument, "power_slowly_varying needs finite alpha > 0");
  }
  if (table.empty()) fail(ErrorCode::kInvalidArgument, "slowly varying table is empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [n, l] = table[i];
    if (!(n >= 1.0) || !std::isfinite(n) || (i > 0 && !(n > table[i - 1].first))) {
      fail(ErrorCode::kInvalidArgument, "slowly varying table needs increasing n >= 1");
    }
    if (!(l > 0.0) || !std::isfinite(l)) {
      fail(ErrorCode::kInvalidArgument, "slowly varying values must be finite and positive");
    }
  }
  check_scale(scale);
  SequenceSpec s;
  s.form_ = SequenceForm::kPowerSlowlyVarying;
  s.alpha_ = alpha;
  s.table_ = std::move(table);
  s.scale_ = scale;
  return s;
}

SequenceSpec SequenceSpec::geometric(double q, double scale) {
  if (!(q > 0.0 && q < 1.0)) fail(ErrorCode::kInvalidArgument, "geometric needs q in (0, 1)");
  check_scale(scale);
  SequenceSpec s;
  s.form_ = SequenceForm::kGeometric;
  s.base_ = q;
  s.scale_ = scale;
  return s;
}

SequenceSpec SequenceSpec::from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("form") || !spec.at("form").is_string()) {
    fail(ErrorCode::kConfigError, "sequence spec needs a string 'form'");
  }
  const std::string form = spec.at("form").get<std::string>();
  const double scale = spec.contains("scale") ? num(spec, "scale") : 1.0;
  try {
    if (form == "power_log") {
      allow_only(spec, {"form", "alpha", "m", "theta", "nu", "scale"});
      const bool beta_style = spec.contains("theta");
      if (beta_style == spec.contains("alpha")) {
        fail(ErrorCode::kConfigError, "power_log needs exactly one of 'alpha' or 'theta'");
      }
      if (beta_style) {
        if (spec.contains("m")) fail(ErrorCode::kConfigError, "'m' pairs with 'alpha', not 'theta'");
        const double nu = spec.contains("nu") ? num(spec, "nu") : 0.0;
        return power_log(num(spec, "theta"), -nu, scale);
      }
      if (spec.contains("nu")) fail(ErrorCode::kConfigError, "'nu' pairs with 'theta', not 'alpha'");
      return power_log(num(spec, "alpha"), spec.contains("m") ? num(spec, "m") : 0.0, scale);
    }
    if (form == "power_slowly_varying") {
      allow_only(spec, {"form", "alpha", "table", "scale"});
      if (!spec.contains("table") || !spec.at("table").is_array()) {
        fail(ErrorCode::kConfigError, "power_slowly_varying needs a 'table' array");
      }
      std::vector<std::pair<double, double>> table;
      for (const auto& row : spec.at("table")) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
          fail(ErrorCode::kConfigError, "table rows must be [n, L] pairs");
        }
        table.emplace_back(row[0].get<double>(), row[1].get<double>());
      }
      return power_slowly_varying(num(spec, "alpha"), std::move(table), scale);
    }
    if (form == "geometric") {
      allow_only(spec, {"form", "q", "Q", "scale"});
      if (spec.contains("q") == spec.contains("Q")) {
        fail(ErrorCode::kConfigError, "geometric needs exactly one of 'q' or 'Q'");
      }
      return geometric(num(spec, spec.contains("q") ? "q" : "Q"), scale);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    fail(ErrorCode::kConfigError, "invalid " + form + " sequence: " + e.what());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kConfigError, "invalid " + form + " sequence: " + e.what());
  }
  fail(ErrorCode::kConfigError, "unknown sequence form '" + form + "'");
}

nlohmann::json SequenceSpec::to_json() const {
  nlohmann::json j;
  switch (form_) {
    case SequenceForm::kPowerLog:
      j = {{"form", "power_log"}, {"alpha", alpha_}, {"m", m_}};
      break;
    case SequenceForm::kPowerSlowlyVarying: {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& [n, l] : table_) rows.push_back({n, l});
      j = {{"form", "power_slowly_varying"}, {"alpha", alpha_}, {"table", rows}};
      break;
    }
    case SequenceForm::kGeometric:
      j = {{"form", "geometric"}, {"q", base_}};
      break;
  }
  if (scale_ != 1.0) j["scale"] = scale_;
  return j;
}

double SequenceSpec::slowly_varying(double n) const {
  if (table_.empty()) return 1.0;
  if (n <= table_.front().first) return table_.front().second;
  if (n >= table_.back().first) return table_.back().second;
  auto it = std::lower_bound(table_.begin(), table_.end(), n,
                             [](const auto& a, double x) { return a.first < x; });
  if (it->first == n) return it->second;
  const auto& lo = *(it - 1);
  const double w = (std::log(n) - std::log(lo.first)) / (std::log(it->first) - std::log(lo.first));
  return std::exp(std::log(lo.second) + w * (std::log(it->second) - std::log(lo.second)));
}

double SequenceSpec::value(std::int64_t n) const {
  const double x = static_cast<double>(n);
  double v = scale_;
  if (base_ != 1.0) v *= std::pow(base_, x);
  if (alpha_ != 0.0) v *= std::pow(x, -alpha_);
  if (m_ != 0.0) v *= std::pow(std::log1p(x), m_);
  if (!table_.empty()) v *= slowly_varying(x);
  return v;
}

double SequenceSpec::log_value(std::int64_t n) const {
  const double x = static_cast<double>(n);
  double v = std::log(scale_);
  if (base_ != 1.0) v += x * std::log(base_);
  if (alpha_ != 0.0) v -= alpha_ * std::log(x);
  if (m_ != 0.0) v += m_ * std::log(std::log1p(x));
  if (!table_.empty()) v += std::log(slowly_varying(x));
  return v;
}

std::string SequenceSpec::describe() const { return to_json().dump(); }

DecaySequencePair::DecaySequencePair(SequenceSpec eps, SequenceSpec beta)
    : eps_(std::move(eps)), beta_(std::move(beta)) {
  first_ = eps_.defined_at_zero() && beta_.defined_at_zero() ? 0 : 1;
  if (geometric_pair()) {
    const double d = delta();
    if (!(d > 0.0 && d < 1.0)) {
      fail(ErrorCode::kInvalidArgument, "geometric pair needs delta = q/Q in (0, 1)");
    }
  }
}

DecaySequencePair DecaySequencePair::from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("eps") || !spec.contains("beta")) {
    fail(ErrorCode::kConfigError, "sequence pair needs 'eps' and 'beta'");
  }
  allow_only(spec, {"eps", "beta"});
  try {
    return DecaySequencePair(SequenceSpec::from_json(spec.at("eps")),
                             SequenceSpec::from_json(spec.at("beta")));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    fail(ErrorCode::kConfigError, std::string("invalid sequence pair: ") + e.what());
  }
}

nlohmann::json DecaySequencePair::to_json() const {
  return {{"eps", eps_.to_json()}, {"beta", beta_.to_json()}};
}

bool DecaySequencePair::geometric_pair() const {
  return eps_.form() == SequenceForm::kGeometric && beta_.form() == SequenceForm::kGeometric;
}

double DecaySequencePair::delta() const { return eps_.base() / beta_.base(); }

double DecaySequencePair::log_ratio(std::int64_t n) const {
  return eps_.log_value(n) - beta_.log_value(n);
}

double DecaySequencePair::log_tail_constant() const {
  const double end = table_end();
  return std::log(eps_.scale()) - std::log(beta_.scale()) + std::log(eps_.slowly_varying(end + 1.0)) -
         std::log(beta_.slowly_varying(end + 1.0));
}

std::pair<double, bool> DecaySequencePair::convergence_threshold() const {
  const double g = ratio_base();
  if (g < 1.0) return {0.0, true};
  if (g > 1.0) return {std::numeric_limits<double>::infinity(), true};
  const double s0 = ratio_power();
  const double k0 = ratio_log_power();
  if (!(s0 > 0.0)) return {std::numeric_limits<double>::infinity(), true};
  // At p = 1/s0 the terms are n^-1 ln^(k0/s0)(n+1): summable iff k0/s0 < -1.
  return {1.0 / s0, !(k0 / s0 < -1.0)};
}

bool DecaySequencePair::summable(double p) const {
  const auto [t, open] = convergence_threshold();
  return p > t || (p == t && !open);
}

}  // namespace glsreg
