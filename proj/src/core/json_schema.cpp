// SPDX-License-Identifier: Apache-2.0
#include "json_schema.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace glsreg {
namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

class PositionScanner {
 public:
  explicit PositionScanner(const std::string& t) : text_(t) {}

  std::map<std::string, SourcePosition> run() {
    value("");
    return std::move(out_);
  }

 private:
  void skip_ws() {
    while (i_ < text_.size() && (text_[i_] == ' ' || text_[i_] == '\t' || text_[i_] == '\r' || text_[i_] == '\n')) {
      advance();
    }
  }
  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  std::string string_token() {
    const std::size_t start = i_;
    advance();
    while (i_ < text_.size() && text_[i_] != '"') {
      if (text_[i_] == '\\') advance();
      advance();
    }
    advance();
    return nlohmann::json::parse(text_.substr(start, i_ - start)).get<std::string>();
  }
  void value(const std::string& ptr) {
    skip_ws();
    if (i_ >= text_.size()) return;
    out_[ptr] = {line_, col_};
    const char c = text_[i_];
    if (c == '{') {
      advance();
      skip_ws();
      while (i_ < text_.size() && text_[i_] != '}') {
        const std::string key = string_token();
        skip_ws();
        advance();  // ':'
        value(ptr + "/" + escape_token(key));
        skip_ws();
        if (text_[i_] == ',') {
          advance();
          skip_ws();
        }
      }
      advance();
    } else if (c == '[') {
      advance();
      skip_ws();
      int k = 0;
      while (i_ < text_.size() && text_[i_] != ']') {
        value(ptr + "/" + std::to_string(k++));
        skip_ws();
        if (text_[i_] == ',') advance();
        skip_ws();
      }
      advance();
    } else if (c == '"') {
      string_token();
    } else {
      while (i_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[i_]) == std::string_view::npos) {
        advance();
      }
    }
  }

  const std::string& text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::map<std::string, SourcePosition> out_;
};

std::string type_of(const nlohmann::json& j) {
  if (j.is_null()) return "null";
  if (j.is_boolean()) return "boolean";
  if (j.is_number_integer()) return "integer";
  if (j.is_number()) return "number";
  if (j.is_string()) return "string";
  if (j.is_array()) return "array";
  return "object";
}

bool has_type(const nlohmann::json& j, const std::string& t) {
  if (t == "number") return j.is_number();
  if (t == "integer") {
    if (j.is_number_integer()) return true;
    return j.is_number_float() && std::floor(j.get<double>()) == j.get<double>();
  }
  return type_of(j) == t;
}

std::string fmt(const nlohmann::json& j) { return j.dump(); }

// Discriminator value ("form" or "kind") a branch pins with const/enum.
bool branch_accepts_tag(const nlohmann::json& branch, const nlohmann::json& doc) {
  if (!doc.is_object() || !branch.contains("properties")) return false;
  for (const char* tag : {"form", "kind"}) {
    if (!doc.contains(tag) || !branch.at("properties").contains(tag)) continue;
    const auto& p = branch.at("properties").at(tag);
    if (p.contains("const") && p.at("const") == doc.at(tag)) return true;
    if (p.contains("enum")) {
      for (const auto& e : p.at("enum")) {
        if (e == doc.at(tag)) return true;
      }
    }
  }
  return false;
}

}  // namespace

std::map<std::string, SourcePosition> json_positions(const std::string& text) {
  return PositionScanner(text).run();
}

SchemaValidator::SchemaValidator(nlohmann::json schema) : root_(std::move(schema)) {}

const nlohmann::json& SchemaValidator::resolve(const nlohmann::json& schema) const {
  const nlohmann::json* s = &schema;
  while (s->is_object() && s->contains("$ref")) {
    const std::string ref = s->at("$ref").get<std::string>();
    if (ref.empty() || ref[0] != '#') fail(ErrorCode::kInternal, "only local $ref is supported: " + ref);
    s = &root_.at(nlohmann::json::json_pointer(ref.substr(1)));
  }
  return *s;
}

std::vector<SchemaViolation> SchemaValidator::validate(
    const nlohmann::json& doc, const std::map<std::string, SourcePosition>& positions) const {
  std::vector<SchemaViolation> out;
  check(root_, doc, "", positions, out);
  return out;
}

void SchemaValidator::check(const nlohmann::json& raw, const nlohmann::json& doc, const std::string& ptr,
                            const std::map<std::string, SourcePosition>& positions,
                            std::vector<SchemaViolation>& out) const {
  const nlohmann::json& s = resolve(raw);
  auto report = [&](const std::string& at, std::string msg) {
    SourcePosition pos;
    if (auto it = positions.find(at); it != positions.end()) pos = it->second;
    out.push_back({at, pos, std::move(msg)});
  };

  if (s.contains("oneOf")) {
    const auto& branches = s.at("oneOf");
    std::vector<std::vector<SchemaViolation>> errs(branches.size());
    int matched = 0;
    for (std::size_t b = 0; b < branches.size(); ++b) {
      check(branches[b], doc, ptr, positions, errs[b]);
      if (errs[b].empty()) ++matched;
    }
    if (matched > 1) report(ptr, "matches more than one alternative");
    if (matched == 0) {
      std::size_t pick = branches.size();
      for (std::size_t b = 0; b < branches.size(); ++b) {
        if (branch_accepts_tag(resolve(branches[b]), doc)) pick = b;
      }
      if (pick < branches.size()) {
        out.insert(out.end(), errs[pick].begin(), errs[pick].end());
      } else if (doc.is_object() && (doc.contains("form") || doc.contains("kind"))) {
        const char* tag = doc.contains("form") ? "form" : "kind";
        report(ptr + "/" + tag, std::string("unknown ") + tag + " " + fmt(doc.at(tag)));
      } else {
        report(ptr, "value " + type_of(doc) + " matches none of the " + std::to_string(branches.size()) +
                        " allowed shapes");
      }
    }
  }

  if (s.contains("type")) {
    const auto& t = s.at("type");
    bool ok = false;
    std::string names;
    for (const auto& one : t.is_array() ? t : nlohmann::json::array({t})) {
      ok = ok || has_type(doc, one.get<std::string>());
      names += (names.empty() ? "" : " or ") + one.get<std::string>();
    }
    if (!ok) {
      report(ptr, "expected " + names + ", got " + type_of(doc));
      return;
    }
  }
  if (s.contains("const") && s.at("const") != doc) {
    report(ptr, "must equal " + fmt(s.at("const")) + ", got " + fmt(doc));
  }
  if (s.contains("enum")) {
    bool ok = false;
    for (const auto& e : s.at("enum")) ok = ok || e == doc;
    if (!ok) report(ptr, "must be one of " + fmt(s.at("enum")) + ", got " + fmt(doc));
  }
  if (doc.is_number()) {
    const double x = doc.get<double>();
    if (s.contains("minimum") && x < s.at("minimum").get<double>()) {
      report(ptr, "must be >= " + fmt(s.at("minimum")) + ", got " + fmt(doc));
    }
    if (s.contains("maximum") && x > s.at("maximum").get<double>()) {
      report(ptr, "must be <= " + fmt(s.at("maximum")) + ", got " + fmt(doc));
    }
    if (s.contains("exclusiveMinimum") && !(x > s.at("exclusiveMinimum").get<double>())) {
      report(ptr, "must be > " + fmt(s.at("exclusiveMinimum")) + ", got " + fmt(doc));
    }
    if (s.contains("exclusiveMaximum") && !(x < s.at("exclusiveMaximum").get<double>())) {
      report(ptr, "must be < " + fmt(s.at("exclusiveMaximum")) + ", got " + fmt(doc));
    }
  }
  if (doc.is_array()) {
    if (s.contains("minItems") && doc.size() < s.at("minItems").get<std::size_t>()) {
      report(ptr, "needs at least " + fmt(s.at("minItems")) + " items, got " + std::to_string(doc.size()));
    }
    if (s.contains("maxItems") && doc.size() > s.at("maxItems").get<std::size_t>()) {
      report(ptr, "allows at most " + fmt(s.at("maxItems")) + " items, got " + std::to_string(doc.size()));
    }
    if (s.contains("items")) {
      for (std::size_t k = 0; k < doc.size(); ++k) check(s.at("items"), doc[k], ptr + "/" + std::to_string(k), positions, out);
    }
  }
  if (doc.is_object()) {
    if (s.contains("required")) {
      for (const auto& r : s.at("required")) {
        if (!doc.contains(r.get<std::string>())) report(ptr, "missing required field " + fmt(r));
      }
    }
    const nlohmann::json* props = s.contains("properties") ? &s.at("properties") : nullptr;
    for (const auto& [k, v] : doc.items()) {
      const std::string child = ptr + "/" + escape_token(k);
      if (props && props->contains(k)) {
        check(props->at(k), v, child, positions, out);
      } else if (s.contains("additionalProperties") && s.at("additionalProperties") == false) {
        report(child, "unknown field \"" + k + "\"");
      }
    }
  }
}

nlohmann::json parse_and_validate(const std::string& text, const nlohmann::json& schema,
                                  const std::string& source_name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    const auto colon = what.find(": ");
    if (colon != std::string::npos) what = what.substr(colon + 2);
    fail(ErrorCode::kConfigError, source_name + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                      ": invalid JSON: " + what);
  }
  const auto positions = json_positions(text);
  auto errors = SchemaValidator(schema).validate(doc, positions);
  std::stable_sort(errors.begin(), errors.end(), [](const SchemaViolation& a, const SchemaViolation& b) {
    return a.at.line != b.at.line ? a.at.line < b.at.line : a.at.column < b.at.column;
  });
  if (!errors.empty()) {
    std::ostringstream os;
    for (std::size_t i = 0; i < errors.size(); ++i) {
      const auto& v = errors[i];
      if (i) os << "\n";
      os << source_name << ":" << v.at.line << ":" << v.at.column << ": "
         << (v.pointer.empty() ? "(root)" : v.pointer) << ": " << v.message;
    }
    fail(ErrorCode::kConfigError, os.str());
  }
  return doc;
}

}  // namespace glsreg
