// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "generating_function.hpp"
#include "moment_function.hpp"
#include "scan.hpp"

namespace glsreg {

struct NormResult {
  double value = 0.0;
  double argmax = 0.0;
  /// Ratio grows without bound; `value` is +inf.
  bool unbounded = false;
  /// Supremum approached at an open end or the cap, not attained.
  bool boundary_limit = false;
  ScanResult scan;
};

/// sup_p ||f||_p / psi(p) over the common domain.
/// Errors: kEmptyDomain when the domains do not overlap.
NormResult gls_norm(const MomentFunction& moments, const GeneratingFunction& psi);

/// sup over e in (0, q-1) of e^(1/(q-e)) ||f||_(q-e).
/// Errors: kEmptyDomain when q <= 1.
NormResult classical_grand_norm(const MomentFunction& moments, double q);

struct ConjugateResult {
  double value = 0.0;
  double argmax = 0.0;
  bool unbounded = false;
  ScanResult scan;
};

/// h*(v) = sup_p (p v - p ln psi(p)).
ConjugateResult young_fenchel(const GeneratingFunction& psi, double v);

/// exp(-h*(ln t)) clamped to [0, 1], for a variable of unit norm in G psi.
/// Errors: kDomainError when t < e.
double exponential_tail_bound(const GeneratingFunction& psi, double t);

/// min over the conjugate's scan points of (psi(p)/t)^p, evaluated directly.
/// Equal to exponential_tail_bound up to rounding.
double markov_infimum(const GeneratingFunction& psi, double t);

}  // namespace glsreg
