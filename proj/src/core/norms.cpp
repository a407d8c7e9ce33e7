// SPDX-License-Identifier: Apache-2.0
#include "norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"

namespace glsreg {
namespace {

ScanRange range_of(const ExponentInterval& d) {
  return ScanRange{d.lower, d.upper, d.lower_open, d.upper_open};
}

double ratio(double m, double psi) {
  if (m == 0.0) return 0.0;
  if (std::isinf(psi)) return std::isinf(m) ? std::nan("") : 0.0;
  return m / psi;
}

NormResult from_scan(ScanResult s) {
  NormResult r;
  r.value = std::max(0.0, s.value);
  r.argmax = s.argmax;
  r.unbounded = s.unbounded;
  r.boundary_limit = s.boundary_limit;
  r.scan = std::move(s);
  return r;
}

}  // namespace

NormResult gls_norm(const MomentFunction& moments, const GeneratingFunction& psi) {
  const auto dom = intersect(moments.domain(), psi.domain());
  if (!dom) fail(ErrorCode::kEmptyDomain, "moment and generating function domains are disjoint");
  if (auto r = psi.extremal_point()) {
    NormResult out;
    out.argmax = *r;
    out.value = dom->contains(*r) ? ratio(moments.value(*r), psi.evaluate(*r)) : 0.0;
    if (std::isnan(out.value)) out.value = 0.0;
    out.unbounded = std::isinf(out.value);
    return out;
  }
  return from_scan(scan_supremum(
      [&](double p) { return ratio(moments.value(p), psi.evaluate(p)); }, range_of(*dom)));
}

NormResult classical_grand_norm(const MomentFunction& moments, double q) {
  if (!(q > 1.0)) fail(ErrorCode::kEmptyDomain, "classical grand norm needs q > 1");
  const auto f = [&](double e) {
    const double m = moments.value(q - e);
    if (m == 0.0) return 0.0;
    return std::pow(e, 1.0 / (q - e)) * m;
  };
  return from_scan(scan_supremum(f, ScanRange{0.0, q - 1.0, true, true}));
}

ConjugateResult young_fenchel(const GeneratingFunction& psi, double v) {
  const auto g = [&](double p) {
    const double s = psi.evaluate(p);
    if (std::isinf(s)) return -kInf;
    return p * v - p * std::log(s);
  };
  ConjugateResult out;
  if (auto r = psi.extremal_point()) {
    out.argmax = *r;
    out.value = g(*r);
    out.scan.grid = {*r};
    out.scan.values = {out.value};
    return out;
  }
  out.scan = scan_supremum(g, range_of(psi.domain()));
  out.value = out.scan.value;
  out.argmax = out.scan.argmax;
  out.unbounded = out.scan.unbounded;
  return out;
}

double exponential_tail_bound(const GeneratingFunction& psi, double t) {
  if (!(t >= std::numbers::e)) fail(ErrorCode::kDomainError, "tail bound needs t >= e");
  const ConjugateResult h = young_fenchel(psi, std::log(t));
  if (h.unbounded) return 0.0;
  return std::clamp(std::exp(-h.value), 0.0, 1.0);
}

double markov_infimum(const GeneratingFunction& psi, double t) {
  if (!(t >= std::numbers::e)) fail(ErrorCode::kDomainError, "tail bound needs t >= e");
  const ConjugateResult h = young_fenchel(psi, std::log(t));
  if (h.unbounded) return 0.0;
  double best = kInf;
  auto visit = [&](double p) {
    const double s = psi.evaluate(p);
    if (std::isfinite(s)) best = std::min(best, std::pow(s / t, p));
  };
  for (double p : h.scan.grid) visit(p);
  visit(h.argmax);
  return std::clamp(best, 0.0, 1.0);
}

}  // namespace glsreg
