// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "interval.hpp"
#include "json.hpp"
#include "moment_function.hpp"

namespace glsreg {

enum class GeneratingKind {
  kPowerRoot,
  kTwoSidedSingular,
  kExtremal,
  kConstant,
  kTabulated,
  kConstantExtendedNatural,
  kComposite,
};

namespace detail {
struct GeneratingNode;
}

/// A positive function psi(p) on an interval of exponents; psi defines the
/// Grand Lebesgue space G psi through sup_p ||f||_p / psi(p).
///
/// Values are immutable and evaluation is thread-safe. Evaluation returns +inf
/// outside the domain, so downstream ratios follow the C/inf = 0 convention.
class GeneratingFunction {
 public:
  /// p^(1/m) on [1, inf).
  static GeneratingFunction power_root(double m);
  /// (p-1)^(-alpha) (b-p)^(-beta) on (1, b).
  static GeneratingFunction two_sided(double b, double alpha, double beta);
  /// 1 at p = r, +inf elsewhere; the space reduces to L_r.
  static GeneratingFunction extremal(double r);
  /// The constant c > 0 on `domain`.
  static GeneratingFunction constant(double c, ExponentInterval domain = {});
  /// Log-linear interpolation between (p, value) points, +inf off the grid.
  static GeneratingFunction tabulated(std::vector<std::pair<double, double>> points);
  /// The two-piece natural function: nu(a) on [1, a], nu(p) on (a, b).
  static GeneratingFunction constant_extended_natural(double a, MomentFunction moments);
  /// base(p) * factor(p) on `domain`; `label` names the factor in reports.
  static GeneratingFunction composite(GeneratingFunction base, std::function<double(double)> factor,
                                      ExponentInterval domain, std::string label);

  double evaluate(double p) const;
  double operator()(double p) const { return evaluate(p); }

  const ExponentInterval& domain() const;
  GeneratingKind kind() const;
  /// The point r for extremal functions (including composites over one).
  std::optional<double> extremal_point() const;
  std::string describe() const;

 private:
  explicit GeneratingFunction(std::shared_ptr<const detail::GeneratingNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::GeneratingNode> node_;
};

/// psi(p) (p eps - 1)^(-1/p) on (max(1/eps, a), b).
/// Errors: kInvalidEpsilon unless 0 < eps < min(1, alpha); kEmptyDomain if 1/eps >= b.
GeneratingFunction kloeden_generating(const GeneratingFunction& psi, double alpha, double eps);

/// Natural function of one variable from its moment curve. The moments are
/// taken as finite from the first exponent a where they are finite and
/// positive; below a the value nu(a) is held constant down to p = 1.
GeneratingFunction natural_function(const MomentFunction& moments);

/// Natural function of a family: pointwise sup of the members' moments.
GeneratingFunction natural_function(std::span<const MomentFunction> family);

/// Checks inf psi > 0 on a 512-point geometric grid plus samples adjacent to
/// both ends. Throws Error(kNonPositiveGenerating) on violation.
void check_standing_positivity(const GeneratingFunction& psi);

/// {"form": "power_root", "m": ...} | {"form": "two_sided", "b", "alpha", "beta"} |
/// {"form": "extremal", "r"} | {"form": "table", "points": [[p, v], ...]} |
/// {"form": "constant", "c", optional "lower", "upper"}.
/// Throws Error(kConfigError) on malformed input.
GeneratingFunction generating_from_json(const nlohmann::json& spec);

}  // namespace glsreg
