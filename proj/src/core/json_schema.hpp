// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace glsreg {

struct SourcePosition {
  int line = 1;
  int column = 1;
};

/// Start position of every value in a JSON text, keyed by JSON pointer ("" is
/// the root). The text must already be valid JSON.
std::map<std::string, SourcePosition> json_positions(const std::string& text);

struct SchemaViolation {
  std::string pointer;
  SourcePosition at;
  std::string message;
};

/// Validates against the subset of JSON Schema 2020-12 used by the published
/// config schema: type, const, enum, required, properties,
/// additionalProperties, items, minItems, maxItems, minimum, maximum,
/// exclusiveMinimum, exclusiveMaximum, oneOf and local $ref.
class SchemaValidator {
 public:
  explicit SchemaValidator(nlohmann::json schema);

  std::vector<SchemaViolation> validate(const nlohmann::json& doc,
                                        const std::map<std::string, SourcePosition>& positions) const;

 private:
  void check(const nlohmann::json& schema, const nlohmann::json& doc, const std::string& ptr,
             const std::map<std::string, SourcePosition>& positions,
             std::vector<SchemaViolation>& out) const;
  const nlohmann::json& resolve(const nlohmann::json& schema) const;

  nlohmann::json root_;
};

/// Parses `text` and validates it against `schema`. Throws Error(kConfigError)
/// whose message lists every violation as "source:line:column: pointer: message".
nlohmann::json parse_and_validate(const std::string& text, const nlohmann::json& schema,
                                  const std::string& source_name);

}  // namespace glsreg
