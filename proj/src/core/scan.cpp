// SPDX-License-Identifier: Apache-2.0
#include "scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace glsreg {
namespace {

constexpr int kApproachDepth = 12;
constexpr double kProbeLimit = 1e15;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double sanitize(double v) { return std::isnan(v) ? kNegInf : v; }

// Increments along a sequence approaching a boundary. Returns true when they
// do not shrink geometrically (ratio of successive increments >= 0.99),
// which we read as divergence.
bool increments_diverge(double v_far, double v_mid, double v_near, double* limit) {
  const double d0 = v_mid - v_far;
  const double d1 = v_near - v_mid;
  if (!(d1 > 0.0)) {
    *limit = v_near;
    return false;
  }
  if (!(d0 > 0.0)) {
    *limit = v_near;
    return false;
  }
  const double r = d1 / d0;
  if (r >= 0.99) return true;
  *limit = v_near + d1 * r / (1.0 - r);
  return false;
}

}  // namespace

std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> g;
  if (n <= 1 || !(hi > lo)) {
    g.push_back(lo);
    return g;
  }
  g.reserve(static_cast<std::size_t>(n));
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < n; ++i) {
    g.push_back(lo * std::exp(ratio * i / (n - 1)));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::pair<double, double> golden_section_max(const std::function<double(double)>& f, double a,
                                             double b, int max_iter) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = sanitize(f(c));
  double fd = sanitize(f(d));
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(b - a) <= 1e-14 * (std::abs(a) + std::abs(b))) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = sanitize(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = sanitize(f(d));
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

ScanResult scan_supremum(const std::function<double(double)>& f, const ScanRange& range,
                         const ScanOptions& options) {
  ScanResult out;
  const bool infinite_hi = std::isinf(range.hi);
  double hi = range.hi;
  if (infinite_hi) {
    hi = options.cap > range.lo ? options.cap : (range.lo > 0 ? range.lo * 10.0 : 10.0);
  }
  const double lo = range.lo;
  const double width = hi - lo;
  const bool lo_open = range.lo_open || lo <= 0.0;
  const bool hi_open = !infinite_hi && range.hi_open;

  std::vector<double> pts;
  const double g_lo = lo > 0.0 ? lo : hi * 1e-12;
  std::vector<double> base = geometric_grid(g_lo, hi, options.grid_points);
  for (double x : base) {
    if (lo_open && x <= lo) continue;
    if (hi_open && x >= hi) continue;
    pts.push_back(x);
  }
  std::vector<double> lo_approach;
  std::vector<double> hi_approach;
  for (int k = 1; k <= kApproachDepth; ++k) {
    const double step = width * std::pow(10.0, -k);
    if (lo_open) lo_approach.push_back(lo + step);
    if (hi_open) hi_approach.push_back(hi - step);
  }
  pts.insert(pts.end(), lo_approach.begin(), lo_approach.end());
  pts.insert(pts.end(), hi_approach.begin(), hi_approach.end());
  pts.erase(std::remove_if(pts.begin(), pts.end(),
                           [&](double x) {
                             return (lo_open ? x <= lo : x < lo) || (hi_open ? x >= hi : x > hi);
                           }),
            pts.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  out.grid = pts;
  out.values.reserve(pts.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.values.push_back(sanitize(f(pts[i])));
    if (out.values[i] > out.values[best]) best = i;
  }
  if (pts.empty()) {
    out.value = kNegInf;
    return out;
  }
  out.argmax = pts[best];
  out.value = out.values[best];
  if (std::isinf(out.value) && out.value > 0) {
    out.unbounded = true;
    return out;
  }

  auto value_at = [&](double x) {
    auto it = std::lower_bound(pts.begin(), pts.end(), x);
    if (it != pts.end() && *it == x) return out.values[static_cast<std::size_t>(it - pts.begin())];
    return sanitize(f(x));
  };

  // Supremum sitting at the innermost point of an approach sequence.
  auto check_approach = [&](const std::vector<double>& seq) -> bool {
    if (seq.size() < 3 || pts[best] != seq.back()) return false;
    const std::size_t n = seq.size();
    double limit = out.value;
    if (increments_diverge(value_at(seq[n - 3]), value_at(seq[n - 2]), value_at(seq[n - 1]),
                           &limit)) {
      out.unbounded = true;
      out.value = std::numeric_limits<double>::infinity();
    } else {
      out.boundary_limit = true;
      out.value = std::max(out.value, limit);
    }
    return true;
  };
  if (check_approach(lo_approach) || check_approach(hi_approach)) return out;

  if (infinite_hi && pts[best] == pts.back()) {
    // Still rising at the cap: walk out by decades until it turns over.
    double x = hi;
    double v = out.value;
    double v_mid = sanitize(f(hi / 10.0));
    double v_far = sanitize(f(hi / 100.0));
    while (x < kProbeLimit) {
      const double nv = f(x * 10.0);
      if (!std::isfinite(nv)) break;
      if (nv <= v) {
        auto [gx, gv] = golden_section_max(f, x / 10.0, x * 10.0);
        out.argmax = gv > v ? gx : x;
        out.value = std::max(gv, v);
        return out;
      }
      v_far = v_mid;
      v_mid = v;
      v = nv;
      x *= 10.0;
    }
    out.argmax = x;
    out.value = v;
    double limit = v;
    if (increments_diverge(v_far, v_mid, v, &limit)) {
      out.unbounded = true;
      out.value = std::numeric_limits<double>::infinity();
    } else {
      out.boundary_limit = true;
      out.value = std::max(out.value, limit);
    }
    return out;
  }

  if (options.refine && pts.size() >= 2) {
    const std::size_t left = best == 0 ? 0 : best - 1;
    const std::size_t right = best + 1 < pts.size() ? best + 1 : best;
    if (right > left) {
      auto [x, v] = golden_section_max(f, pts[left], pts[right]);
      if (v > out.value) {
        out.value = v;
        out.argmax = x;
      }
    }
  }
  return out;
}

}  // namespace glsreg
