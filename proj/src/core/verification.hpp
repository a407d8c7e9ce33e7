// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace glsreg {

enum class Verdict { kPass, kFail, kInconclusive };
const char* verdict_name(Verdict v);

/// est <= bound: PASS if est + unc <= bound, FAIL if est - unc > bound.
Verdict verdict_at_most(double estimate, double uncertainty, double bound);
/// est >= bound, mirrored.
Verdict verdict_at_least(double estimate, double uncertainty, double bound);
/// |est - target| <= unc; a two-sided agreement check has no INCONCLUSIVE band.
Verdict verdict_agrees(double estimate, double uncertainty, double target);

struct CheckRecord {
  std::string check_id;
  int criterion = 0;
  /// The inequality or identity being checked, stated in plain terms.
  std::string anchor;
  std::string relation;  // "<=", ">=", "==", "in"
  double theoretical = 0.0;
  double estimate = 0.0;
  double half_width = 0.0;
  double truncation_bound = 0.0;
  /// Total allowance used for the verdict (k half-widths + truncation + tolerance).
  double uncertainty = 0.0;
  Verdict verdict = Verdict::kPass;
  std::string note;

  nlohmann::json to_json() const;
};

struct CriterionSummary {
  int id = 0;
  std::string title;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t inconclusive = 0;
  bool passed() const { return failures == 0; }
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  /// Criterion ids 1..10; empty selects all.
  std::vector<int> criteria;
  int threads = 0;

  static SuiteConfig from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;
  std::vector<CriterionSummary> criteria;
  nlohmann::json provenance = nlohmann::json::object();

  std::size_t count(Verdict v) const;
  bool any_fail() const { return count(Verdict::kFail) > 0; }
  nlohmann::json to_json() const;
  /// Fixed-width table, one row per check, then one line per criterion.
  std::string to_text() const;
};

inline constexpr int kCriterionCount = 10;
const char* criterion_title(int id);
double criterion_budget_seconds(int id);

/// Runs one criterion; the last record of every criterion is its runtime check.
/// Errors: kInvalidArgument for an unknown id.
std::vector<CheckRecord> run_criterion(int id, const SuiteConfig& config,
                                       CriterionSummary* summary = nullptr);

VerificationReport run_verification(const SuiteConfig& config);

}  // namespace glsreg
