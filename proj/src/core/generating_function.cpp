// SPDX-License-Identifier: Apache-2.0
#include "generating_function.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "error.hpp"
#include "scan.hpp"

namespace glsreg {
namespace detail {

struct GeneratingNode {
  ExponentInterval domain;
  GeneratingKind kind = GeneratingKind::kConstant;
  std::function<double(double)> eval;  // called only for p inside the domain
  std::optional<double> extremal;
  std::string description;
};

}  // namespace detail

namespace {

using detail::GeneratingNode;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void require(bool ok, ErrorCode code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace

GeneratingFunction GeneratingFunction::power_root(double m) {
  require(m > 0.0 && std::isfinite(m), ErrorCode::kInvalidArgument, "power_root needs m > 0");
  auto n = std::make_shared<GeneratingNode>();
  n->domain = ExponentInterval::from_one();
  n->kind = GeneratingKind::kPowerRoot;
  n->eval = [m](double p) { return std::pow(p, 1.0 / m); };
  n->description = "p^(1/" + fmt(m) + ")";
  return GeneratingFunction(std::move(n));
}

GeneratingFunction GeneratingFunction::two_sided(double b, double alpha, double beta) {
  require(b > 1.0 && std::isfinite(b), ErrorCode::kInvalidArgument, "two_sided needs 1 < b < inf");
  require(alpha >= 0.0 && beta >= 0.0, ErrorCode::kInvalidArgument,
          "two_sided needs alpha, beta >= 0");
  auto n = std::make_shared<GeneratingNode>();
  n->domain = ExponentInterval::make(1.0, b, true, true);
  n->kind = GeneratingKind::kTwoSidedSingular;
  n->eval = [b, alpha, beta](double p) {
    return std::pow(p - 1.0, -alpha) * std::pow(b - p, -beta);
  };
  n->description = "(p-1)^(-" + fmt(alpha) + ") (" + fmt(b) + "-p)^(-" + fmt(beta) + ")";
  return GeneratingFunction(std::move(n));
}

GeneratingFunction GeneratingFunction::extremal(double r) {
  require(r >= 1.0 && std::isfinite(r), ErrorCode::kInvalidArgument, "extremal needs finite r >= 1");
  auto n = std::make_shared<GeneratingNode>();
  n->domain = ExponentInterval::from_one();
  n->kind = GeneratingKind::kExtremal;
  n->extremal = r;
  n->eval = [r](double p) { return p == r ? 1.0 : kInf; };
  n->description = "extremal(r=" + fmt(r) + ")";
  return GeneratingFunction(std::move(n));
}

GeneratingFunction GeneratingFunction::constant(double c, ExponentInterval domain) {
  require(c > 0.0 && std::isfinite(c), ErrorCode::kInvalidArgument, "constant needs finite c > 0");
  auto n = std::make_shared<GeneratingNode>();
  n->domain = domain;
  n->kind = GeneratingKind::kConstant;
  n->eval = [c](double) { return c; };
  n->description = fmt(c) + " on " + domain.describe();
  return GeneratingFunction(std::move(n));
}

GeneratingFunction GeneratingFunction::tabulated(std::vector<std::pair<double, double>> points) {
  require(points.size() >= 2, ErrorCode::kInvalidArgument, "table needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [p, v] = points[i];
    require(std::isfinite(p) && p >= 1.0, ErrorCode::kInvalidArgument,
            "table exponents must be finite and >= 1");
    require(i == 0 || p > points[i - 1].first, ErrorCode::kInvalidArgument,
            "table exponents must be strictly increasing");
    require(std::isfinite(v), ErrorCode::kInvalidArgument, "table values must be finite");
    require(v > 0.0, ErrorCode::kNonPositiveGenerating, "table values must be positive");
  }
  auto n = std::make_shared<GeneratingNode>();
  n->domain = ExponentInterval::make(points.front().first, points.back().first, false, false);
  n->kind = GeneratingKind::kTabulated;
  n->description = "table(" + std::to_string(points.size()) + " points)";
  n->eval = [pts = std::move(points)](double p) {
    auto it = std::lower_bound(pts.begin(), pts.end(), p,
                               [](const auto& a, double x) { return a.first < x; });
    if (it == pts.end()) return kInf;
    if (it->first == p) return it->second;
    if (it == pts.begin()) return kInf;
    const auto& lo = *(it - 1);
    const double w = (p - lo.first) / (it->first - lo.first);
    return std::exp(std::log(lo.second) + w * (std::log(it->second) - std::log(lo.second)));
  };
  GeneratingFunction out(std::move(n));
  check_standing_positivity(out);
  return out;
}

GeneratingFunction GeneratingFunction::constant_extended_natural(double a, MomentFunction moments) {
  const ExponentInterval& md = moments.domain();
  require(md.contains(a), ErrorCode::kInvalidArgument,
          "natural function anchor must lie in the moment domain");
  const double va = moments.value(a);
  require(std::isfinite(va), ErrorCode::kNoFiniteMoment, "moment at the anchor is not finite");
  require(va > 0.0, ErrorCode::kNonPositiveGenerating, "moment at the anchor is zero");
  auto n = std::make_shared<GeneratingNode>();
  n->domain = ExponentInterval::make(1.0, md.upper, false, md.upper_open);
  n->kind = GeneratingKind::kConstantExtendedNatural;
  n->eval = [a, va, moments](double p) { return p <= a ? va : moments.value(p); };
  n->description = "natural[" + moments.label() + "] extended below a=" + fmt(a);
  return GeneratingFunction(std::move(n));
}

GeneratingFunction GeneratingFunction::composite(GeneratingFunction base,
                                                 std::function<double(double)> factor,
                                                 ExponentInterval domain, std::string label) {
  auto n = std::make_shared<GeneratingNode>();
  n->domain = domain;
  n->kind = GeneratingKind::kComposite;
  n->extremal = base.extremal_point();
  n->description = base.describe() + " * " + label;
  n->eval = [base = std::move(base), factor = std::move(factor)](double p) {
    const double b = base.evaluate(p);
    if (std::isinf(b)) return kInf;
    return b * factor(p);
  };
  return GeneratingFunction(std::move(n));
}

double GeneratingFunction::evaluate(double p) const {
  if (!node_->domain.contains(p)) return kInf;
  return node_->eval(p);
}

const ExponentInterval& GeneratingFunction::domain() const { return node_->domain; }
GeneratingKind GeneratingFunction::kind() const { return node_->kind; }
std::optional<double> GeneratingFunction::extremal_point() const { return node_->extremal; }
std::string GeneratingFunction::describe() const {
  return node_->description + " on " + node_->domain.describe();
}

GeneratingFunction kloeden_generating(const GeneratingFunction& psi, double alpha, double eps) {
  if (!(alpha > 0.0)) fail(ErrorCode::kInvalidArgument, "alpha must be positive");
  if (!(eps > 0.0 && eps < std::min(1.0, alpha))) {
    fail(ErrorCode::kInvalidEpsilon, "eps must lie in (0, min(1, alpha))");
  }
  const ExponentInterval& d = psi.domain();
  const double threshold = 1.0 / eps;
  if (threshold >= d.upper) {
    fail(ErrorCode::kEmptyDomain, "1/eps is not below the upper end of the psi domain");
  }
  ExponentInterval dom = d;
  if (threshold >= d.lower) {
    dom.lower = threshold;
    dom.lower_open = true;
  }
  if (!(dom.upper > dom.lower)) fail(ErrorCode::kEmptyDomain, "kloeden domain is empty");
  return GeneratingFunction::composite(
      psi, [eps](double p) { return std::pow(p * eps - 1.0, -1.0 / p); }, dom,
      "(p*" + fmt(eps) + "-1)^(-1/p)");
}

GeneratingFunction natural_function(const MomentFunction& moments) {
  const ExponentInterval& d = moments.domain();
  std::vector<double> candidates;
  if (d.contains(d.lower)) candidates.push_back(d.lower);
  const double hi = d.bounded() ? d.upper : std::max(1e4, d.lower * 10.0);
  for (double p : geometric_grid(d.lower, hi, 64)) {
    if (d.contains(p)) candidates.push_back(p);
  }
  bool any_finite = false;
  for (double a : candidates) {
    const double v = moments.value(a);
    if (!std::isfinite(v)) continue;
    any_finite = true;
    if (v > 0.0) return GeneratingFunction::constant_extended_natural(a, moments);
  }
  if (any_finite) fail(ErrorCode::kNonPositiveGenerating, "moments vanish; no natural function");
  fail(ErrorCode::kNoFiniteMoment, "moment function is not finite anywhere on its domain");
}

GeneratingFunction natural_function(std::span<const MomentFunction> family) {
  return natural_function(MomentFunction::pointwise_max(family));
}

void check_standing_positivity(const GeneratingFunction& psi) {
  auto check = [&](double p) {
    const double v = psi.evaluate(p);
    if (std::isnan(v) || v <= 0.0) {
      fail(ErrorCode::kNonPositiveGenerating,
           "generating function is not positive at p=" + fmt(p) + " (" + psi.describe() + ")");
    }
  };
  if (auto r = psi.extremal_point()) {
    check(*r);
    return;
  }
  const ExponentInterval& d = psi.domain();
  const double hi = d.bounded() ? d.upper : std::max(1e4, d.lower * 10.0);
  const double w = hi - d.lower;
  std::vector<double> pts = geometric_grid(d.lower, hi, 512);
  pts.push_back(d.lower + w * 1e-9);
  pts.push_back(hi - w * 1e-9);
  for (double p : pts) {
    if (d.contains(p)) check(p);
  }
}

namespace {

double number_field(const nlohmann::json& spec, const char* key) {
  if (!spec.contains(key)) fail(ErrorCode::kConfigError, std::string("missing field '") + key + "'");
  const auto& v = spec.at(key);
  if (!v.is_number()) fail(ErrorCode::kConfigError, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

void allow_only(const nlohmann::json& spec, std::initializer_list<const char*> keys) {
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : spec.items()) {
    if (!allowed.count(k)) fail(ErrorCode::kConfigError, "unknown field '" + k + "'");
  }
}

}  // namespace

GeneratingFunction generating_from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) fail(ErrorCode::kConfigError, "generating function spec must be an object");
  if (!spec.contains("form") || !spec.at("form").is_string()) {
    fail(ErrorCode::kConfigError, "generating function spec needs a string 'form'");
  }
  const std::string form = spec.at("form").get<std::string>();
  try {
    if (form == "power_root") {
      allow_only(spec, {"form", "m"});
      return GeneratingFunction::power_root(number_field(spec, "m"));
    }
    if (form == "two_sided") {
      allow_only(spec, {"form", "b", "alpha", "beta"});
      return GeneratingFunction::two_sided(number_field(spec, "b"), number_field(spec, "alpha"),
                                           number_field(spec, "beta"));
    }
    if (form == "extremal") {
      allow_only(spec, {"form", "r"});
      return GeneratingFunction::extremal(number_field(spec, "r"));
    }
    if (form == "constant") {
      allow_only(spec, {"form", "c", "lower", "upper"});
      double lower = 1.0;
      double upper = kInf;
      if (spec.contains("lower")) lower = number_field(spec, "lower");
      if (spec.contains("upper") && !spec.at("upper").is_null()) upper = number_field(spec, "upper");
      return GeneratingFunction::constant(number_field(spec, "c"),
                                          ExponentInterval::make(lower, upper));
    }
    if (form == "table") {
      allow_only(spec, {"form", "points"});
      if (!spec.contains("points") || !spec.at("points").is_array()) {
        fail(ErrorCode::kConfigError, "table needs a 'points' array");
      }
      std::vector<std::pair<double, double>> pts;
      for (const auto& row : spec.at("points")) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
          fail(ErrorCode::kConfigError, "table points must be [p, value] pairs");
        }
        pts.emplace_back(row[0].get<double>(), row[1].get<double>());
      }
      return GeneratingFunction::tabulated(std::move(pts));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    fail(ErrorCode::kConfigError, std::string("invalid ") + form + " spec: " + e.what());
  }
  fail(ErrorCode::kConfigError, "unknown generating function form '" + form + "'");
}

}  // namespace glsreg
