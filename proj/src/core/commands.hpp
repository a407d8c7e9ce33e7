// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "generating_function.hpp"
#include "json.hpp"
#include "moment_function.hpp"

namespace glsreg {

enum class OutputFormat { kJson, kCsv, kSvg };

/// "json" | "csv" | "svg"; throws kConfigError otherwise.
OutputFormat parse_format(const std::string& name);

struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  OutputFormat format = OutputFormat::kCsv;
};

struct Artifact {
  std::string name;
  std::string content;
};

struct CommandResult {
  nlohmann::json report;
  std::vector<Artifact> artifacts;
  /// A check inside the command failed (verify suite, conjugate self-test).
  bool failed = false;
};

bool is_command(const std::string& name);

/// The published config schema, embedded at build time.
const std::string& config_schema_text();

/// Parses and validates a config against the published schema.
/// Errors: kConfigError with one "source:line:column: pointer: message" line
/// per violation.
nlohmann::json load_config(const std::string& text, const std::string& source_name = "config");

/// Runs one command on a validated config. The config must carry the block
/// named after the command. Artifacts are named relative to the output
/// directory; the report is always the first one.
CommandResult run_command(const std::string& command, const nlohmann::json& config,
                          const CommandOptions& options = {});

/// SHA-256 (hex) of the canonical dump of `config`.
std::string config_hash(const nlohmann::json& config);

/// {"form": "exponential" | "normal" | "uniform", "scale"?} | {"form": "constant", "c"} |
/// {"form": "table", "points"} | {"form": "samples", "values", "p_grid"}.
MomentFunction moments_from_json(const nlohmann::json& spec);

/// generating_from_json plus {"form": "natural", "of": <moments>}.
GeneratingFunction psi_from_json(const nlohmann::json& spec);

/// A number list, or {"from", "to", "count", "spacing"?: "linear" | "log"}.
std::vector<double> grid_from_json(const nlohmann::json& spec);

}  // namespace glsreg
