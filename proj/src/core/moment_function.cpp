// SPDX-License-Identifier: Apache-2.0
#include "moment_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "scan.hpp"

namespace glsreg {
namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

double interpolate(const std::vector<MomentPoint>& pts, double p, bool want_half_width) {
  auto it = std::lower_bound(pts.begin(), pts.end(), p,
                             [](const MomentPoint& a, double x) { return a.p < x; });
  if (it != pts.end() && it->p == p) return want_half_width ? it->half_width : it->value;
  if (it == pts.begin() || it == pts.end()) return want_half_width ? 0.0 : kInf;
  const MomentPoint& hi = *it;
  const MomentPoint& lo = *(it - 1);
  const double w = (p - lo.p) / (hi.p - lo.p);
  if (want_half_width) return lo.half_width + w * (hi.half_width - lo.half_width);
  if (lo.value > 0.0 && hi.value > 0.0) {
    return std::exp(std::log(lo.value) + w * (std::log(hi.value) - std::log(lo.value)));
  }
  return lo.value + w * (hi.value - lo.value);
}

// Agresti-Coull interval, widened to be centred on the raw proportion so a
// zero count still carries a nonzero width.
double binomial_half_width(double count, double m) {
  const double z2 = kConfidenceZ * kConfidenceZ;
  const double n = m + z2;
  const double centre = (count + 0.5 * z2) / n;
  const double hw = kConfidenceZ * std::sqrt(centre * (1.0 - centre) / n);
  const double v = count / m;
  return std::max(centre + hw - v, v - (centre - hw));
}

std::vector<double> interior_grid(const ExponentInterval& d, int n, double cap) {
  double lo = d.lower;
  double hi = d.bounded() ? d.upper : std::max(cap, d.lower * 10.0);
  const double w = hi - lo;
  if (d.lower_open) lo += w * 1e-9;
  if (d.bounded() && d.upper_open) hi -= w * 1e-9;
  return geometric_grid(lo, hi, n);
}

}  // namespace

MomentFunction MomentFunction::analytic(ExponentInterval domain, Evaluator value,
                                        std::string label) {
  auto s = std::make_shared<State>();
  s->domain = domain;
  s->source = MomentSource::kAnalytic;
  s->label = std::move(label);
  s->value = [domain, fn = std::move(value)](double p) {
    return domain.contains(p) ? fn(p) : kInf;
  };
  s->half_width = [](double) { return 0.0; };
  return MomentFunction(std::move(s));
}

MomentFunction MomentFunction::constant(double c) {
  const double a = std::abs(c);
  std::ostringstream os;
  os << "constant(" << c << ")";
  return analytic(ExponentInterval::from_one(), [a](double) { return a; }, os.str());
}

MomentFunction MomentFunction::standard_exponential() {
  return analytic(
      ExponentInterval::from_one(), [](double p) { return std::exp(std::lgamma(p + 1.0) / p); },
      "standard_exponential");
}

MomentFunction MomentFunction::standard_normal() {
  return analytic(
      ExponentInterval::from_one(),
      [](double p) {
        const double log_moment = 0.5 * p * std::numbers::ln2 + std::lgamma(0.5 * (p + 1.0)) -
                                  0.5 * std::log(std::numbers::pi);
        return std::exp(log_moment / p);
      },
      "standard_normal");
}

MomentFunction MomentFunction::tabulated(std::vector<MomentPoint> points, MomentSource source,
                                         std::size_t sample_count, std::string label) {
  if (points.size() < 2) fail(ErrorCode::kInvalidArgument, "moment table needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    if (!(pt.p >= 1.0) || !std::isfinite(pt.p)) {
      fail(ErrorCode::kInvalidArgument, "moment table exponents must be finite and >= 1");
    }
    if (!(pt.value >= 0.0) || !(pt.half_width >= 0.0)) {
      fail(ErrorCode::kInvalidArgument, "moment table values must be nonnegative");
    }
    if (i > 0 && !(pt.p > points[i - 1].p)) {
      fail(ErrorCode::kInvalidArgument, "moment table exponents must be strictly increasing");
    }
  }
  auto s = std::make_shared<State>();
  s->domain = ExponentInterval::make(points.front().p, points.back().p, false, false);
  s->source = source;
  s->sample_count = sample_count;
  s->label = std::move(label);
  s->table = std::move(points);
  const std::vector<MomentPoint>* tbl = &s->table;
  // The table lives in the same State the lambdas are stored in.
  s->value = [tbl](double p) { return interpolate(*tbl, p, false); };
  s->half_width = [tbl](double p) { return interpolate(*tbl, p, true); };
  return MomentFunction(std::move(s));
}

MomentFunction MomentFunction::pointwise_max(std::span<const MomentFunction> family) {
  if (family.empty()) fail(ErrorCode::kInvalidArgument, "empty moment family");
  std::optional<ExponentInterval> dom = family.front().domain();
  MomentSource source = MomentSource::kAnalytic;
  std::size_t samples = 0;
  for (const auto& m : family) {
    dom = intersect(*dom, m.domain());
    if (!dom) fail(ErrorCode::kEmptyDomain, "moment family has no common exponent range");
    if (m.source() == MomentSource::kEmpirical) source = MomentSource::kEmpirical;
    samples = std::max(samples, m.sample_count());
  }
  std::vector<MomentFunction> members(family.begin(), family.end());
  auto s = std::make_shared<State>();
  s->domain = *dom;
  s->source = source;
  s->sample_count = samples;
  s->label = "family_sup";
  const ExponentInterval d = *dom;
  s->value = [members, d](double p) {
    if (!d.contains(p)) return kInf;
    double best = 0.0;
    for (const auto& m : members) best = std::max(best, m.value(p));
    return best;
  };
  s->half_width = [members](double p) {
    double best = -1.0;
    double hw = 0.0;
    for (const auto& m : members) {
      const double v = m.value(p);
      if (v > best) {
        best = v;
        hw = m.half_width(p);
      }
    }
    return hw;
  };
  return MomentFunction(std::move(s));
}

MomentFunction MomentFunction::scaled(double c) const {
  const double a = std::abs(c);
  auto s = std::make_shared<State>(*state_);
  auto base = state_;
  s->value = [base, a](double p) { return a * base->value(p); };
  s->half_width = [base, a](double p) { return a * base->half_width(p); };
  for (auto& pt : s->table) {
    pt.value *= a;
    pt.half_width *= a;
  }
  return MomentFunction(std::move(s));
}

double MomentFunction::value(double p) const {
  if (!state_->domain.contains(p)) return kInf;
  return state_->value(p);
}

double MomentFunction::half_width(double p) const {
  if (!state_->domain.contains(p)) return 0.0;
  return state_->half_width(p);
}

MomentValidation validate_moments(const MomentFunction& moments) {
  MomentValidation out;
  const auto grid = interior_grid(moments.domain(), 64, 1e3);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = moments.value(grid[i]);
  std::ostringstream detail;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!std::isfinite(v[i]) || !std::isfinite(v[i + 1])) continue;
    const double tol = 2.0 * std::max(moments.half_width(grid[i]), moments.half_width(grid[i + 1])) +
                       1e-12 * std::abs(v[i]);
    if (v[i + 1] < v[i] - tol) {
      out.nondecreasing = false;
      detail << "decrease between p=" << grid[i] << " and p=" << grid[i + 1] << "; ";
      break;
    }
  }
  if (moments.source() == MomentSource::kAnalytic) {
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      if (!(v[i - 1] > 0) || !(v[i] > 0) || !(v[i + 1] > 0)) continue;
      if (!std::isfinite(v[i - 1]) || !std::isfinite(v[i + 1])) continue;
      const double g0 = grid[i - 1] * std::log(v[i - 1]);
      const double g1 = grid[i] * std::log(v[i]);
      const double g2 = grid[i + 1] * std::log(v[i + 1]);
      const double s0 = (g1 - g0) / (grid[i] - grid[i - 1]);
      const double s1 = (g2 - g1) / (grid[i + 1] - grid[i]);
      if (s1 < s0 - 1e-9 * (1.0 + std::abs(s0))) {
        out.log_convex = false;
        detail << "p ln||f||_p not convex near p=" << grid[i] << "; ";
        break;
      }
    }
  }
  out.detail = detail.str();
  return out;
}

MomentPoint empirical_moment(std::span<const double> samples, double p) {
  if (samples.empty()) fail(ErrorCode::kEmptySample, "empirical moments need at least one sample");
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorCode::kInvalidExponent, "empirical moments need finite p >= 1");
  }
  const double m = static_cast<double>(samples.size());
  double xmax = 0.0;
  for (double x : samples) xmax = std::max(xmax, std::abs(x));
  if (!std::isfinite(xmax)) fail(ErrorCode::kInvalidArgument, "samples must be finite");
  if (xmax == 0.0) return {p, 0.0, 0.0};

  // Past p ln max|x| = 700 the raw powers overflow; work relative to the
  // largest magnitude (log-sum-exp form).
  const bool scaled = p * std::log(xmax) > 700.0;
  const double scale = scaled ? xmax : 1.0;
  CompensatedSum sum;
  for (double x : samples) sum.add(std::pow(std::abs(x) / scale, p));
  const double mean = sum.value() / m;
  CompensatedSum sq;
  for (double x : samples) {
    const double d = std::pow(std::abs(x) / scale, p) - mean;
    sq.add(d * d);
  }
  const double var = samples.size() > 1 ? sq.value() / (m - 1.0) : 0.0;
  const double value = scale * std::pow(mean, 1.0 / p);
  const double hw_power = kConfidenceZ * std::sqrt(var / m);
  double hw = 0.0;
  if (mean > 0.0) hw = scale * (1.0 / p) * std::pow(mean, 1.0 / p - 1.0) * hw_power;
  return {p, value, hw};
}

MomentFunction empirical_moments(std::span<const double> samples, std::span<const double> p_grid) {
  if (samples.empty()) fail(ErrorCode::kEmptySample, "empirical moments need at least one sample");
  if (p_grid.empty()) fail(ErrorCode::kInvalidArgument, "empty p grid");
  std::vector<double> grid(p_grid.begin(), p_grid.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<MomentPoint> pts;
  pts.reserve(grid.size());
  for (double p : grid) pts.push_back(empirical_moment(samples, p));
  if (pts.size() == 1) {
    // A single exponent still yields a usable (degenerate-width) table.
    MomentPoint twin = pts.front();
    twin.p = std::nextafter(twin.p, kInf);
    pts.push_back(twin);
  }
  return MomentFunction::tabulated(std::move(pts), MomentSource::kEmpirical, samples.size(),
                                   "empirical");
}

TailEstimate empirical_tail(std::span<const double> samples, double t) {
  if (samples.empty()) fail(ErrorCode::kEmptySample, "empirical tail needs at least one sample");
  std::size_t count = 0;
  for (double x : samples) {
    if (std::abs(x) >= t) ++count;
  }
  const double m = static_cast<double>(samples.size());
  return {static_cast<double>(count) / m, binomial_half_width(static_cast<double>(count), m)};
}

TailFunction TailFunction::exact(std::function<double(double)> fn) {
  return TailFunction([fn = std::move(fn)](double t) { return TailEstimate{fn(t), 0.0}; },
                      TailKind::kExact, 0);
}

TailFunction TailFunction::upper_bound(std::function<double(double)> fn) {
  return TailFunction([fn = std::move(fn)](double t) { return TailEstimate{fn(t), 0.0}; },
                      TailKind::kUpperBound, 0);
}

TailFunction TailFunction::empirical(std::span<const double> samples) {
  if (samples.empty()) fail(ErrorCode::kEmptySample, "empirical tail needs at least one sample");
  auto sorted = std::make_shared<std::vector<double>>();
  sorted->reserve(samples.size());
  for (double x : samples) sorted->push_back(std::abs(x));
  std::sort(sorted->begin(), sorted->end());
  const std::size_t m = sorted->size();
  return TailFunction(
      [sorted](double t) {
        const auto first = std::lower_bound(sorted->begin(), sorted->end(), t);
        const double n = static_cast<double>(sorted->size());
        const double count = static_cast<double>(sorted->end() - first);
        return TailEstimate{count / n, binomial_half_width(count, n)};
      },
      TailKind::kEmpirical, m);
}

std::vector<TailPoint> TailFunction::tabulate(std::span<const double> t_grid) const {
  std::vector<TailPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const auto e = eval_(t);
    out.push_back({t, e.value, e.half_width});
  }
  return out;
}

}  // namespace glsreg
