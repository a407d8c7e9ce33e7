// SPDX-License-Identifier: Apache-2.0
#include "regulator_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "error.hpp"

namespace glsreg {
namespace {

void check_eps(double alpha, double eps) {
  if (!(eps > 0.0 && eps < std::min(1.0, alpha))) {
    fail(ErrorCode::kInvalidEpsilon, "eps must lie in (0, min(1, alpha))");
  }
}

struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Integral of x^-s ln^k(x+1) over [a, inf), s > 1 or (s = 1, k < -1).
double power_log_integral(double a, double s, double k) {
  if (k == 0.0) return std::pow(a, 1.0 - s) / (s - 1.0);
  // x = a e^y turns the integrand into a^(1-s) e^((1-s) y) ln^k(a e^y + 1).
  const double la = std::log(a);
  auto f = [&](double y) {
    const double l = la + y + std::log1p(std::exp(-y) / a);
    return std::exp((1.0 - s) * y + k * std::log(l));
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  const double v = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13,
                                        &err);
  return std::pow(a, 1.0 - s) * v;
}

}  // namespace

void validate_envelope(const MomentEnvelope& env) {
  if (!(env.alpha > 0.0) || !std::isfinite(env.alpha)) {
    fail(ErrorCode::kInvalidArgument, "envelope alpha must be positive");
  }
  if (env.index_start < 1) fail(ErrorCode::kInvalidArgument, "envelope index_start must be >= 1");
}

double kloeden_lp_bound(const MomentEnvelope& env, double eps, double p) {
  validate_envelope(env);
  check_eps(env.alpha, eps);
  if (!(p > 1.0 / eps) || !std::isfinite(p)) {
    fail(ErrorCode::kInvalidExponent, "the L_p bound needs finite p > 1/eps");
  }
  return env.K.evaluate(p) * std::pow(p * eps - 1.0, -1.0 / p);
}

RegulatorNormBound gls_regulator_norm_bound(const MomentEnvelope& env, double eps) {
  validate_envelope(env);
  return {kloeden_generating(env.K, env.alpha, eps), 1.0};
}

double sigma_closed_form(const DecaySequencePair& pair, double p) {
  if (!pair.geometric_pair()) fail(ErrorCode::kInvalidArgument, "closed form needs a geometric pair");
  const double c = pair.eps().scale() / pair.beta().scale();
  return c * std::pow(1.0 - std::pow(pair.delta(), p), -1.0 / p);
}

SigmaResult sigma_function(const DecaySequencePair& pair, double p, double rel_tol) {
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorCode::kInvalidExponent, "sigma needs finite p >= 1");
  if (!pair.geometric_pair()) return sigma_series(pair, p, rel_tol);
  SigmaResult r;
  r.closed_form = true;
  r.value = sigma_closed_form(pair, p);
  r.sum = std::pow(r.value, p);
  r.partial = r.sum;
  return r;
}

SigmaResult sigma_series(const DecaySequencePair& pair, double p, double rel_tol) {
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorCode::kInvalidExponent, "sigma needs finite p >= 1");
  if (!(rel_tol > 0.0)) fail(ErrorCode::kInvalidArgument, "rel_tol must be positive");
  if (!pair.summable(p)) fail(ErrorCode::kDivergent, "sum of (eps_n/beta_n)^p diverges at this p");

  const std::int64_t first = pair.first_index();
  const double g = pair.ratio_base();
  const double s0 = pair.ratio_power();
  const double k0 = pair.ratio_log_power();
  const bool geometric_type = g < 1.0;
  const double s = p * s0;
  const double k = p * k0;

  // Terms are summed relative to exp(shift) so tiny scales cannot underflow.
  const double shift = p * pair.log_ratio(first);
  auto term = [&](std::int64_t n) { return std::exp(p * pair.log_ratio(n) - shift); };
  const double log_c = p * pair.log_tail_constant() - shift;

  // Past n0 the closed tail form applies and is monotone.
  double n0 = std::max<double>(pair.table_end(), static_cast<double>(std::max<std::int64_t>(first, 1)));
  if (!geometric_type && k > 0.0) n0 = std::max(n0, std::ceil(std::exp(k / s)));

  auto bracket = [&](std::int64_t n) -> std::pair<double, double> {
    const double next = term(n + 1);
    if (geometric_type) {
      const double m = static_cast<double>(n + 1);
      double log_rho = std::log(g);
      if (s0 < 0.0) log_rho += -s0 * std::log((m + 1.0) / m);
      if (k0 > 0.0) log_rho += k0 * std::log(std::log(m + 2.0) / std::log(m + 1.0));
      const double rho = std::exp(p * log_rho);
      if (!(rho < 1.0)) return {0.0, std::numeric_limits<double>::infinity()};
      return {next, next / (1.0 - rho)};
    }
    const double x = static_cast<double>(n);
    const double c = std::exp(log_c);
    return {c * power_log_integral(x + 1.0, s, k), c * power_log_integral(x, s, k)};
  };

  CompensatedSum partial;
  std::int64_t n = first;
  std::int64_t checkpoint =
      std::max<std::int64_t>(first + 64, static_cast<std::int64_t>(std::ceil(n0)));
  while (true) {
    for (; n <= checkpoint; ++n) partial.add(term(n));
    const double part = partial.value();
    const auto [lo, hi] = bracket(checkpoint);
    if (hi - lo <= rel_tol * part) {
      SigmaResult r;
      const double scale = std::exp(shift);
      r.terms = checkpoint - first + 1;
      r.partial = part * scale;
      r.remainder_lower = lo * scale;
      r.remainder_upper = hi * scale;
      const double log_sum = std::log(part + 0.5 * (lo + hi)) + shift;
      r.sum = std::exp(log_sum);
      r.value = std::exp(log_sum / p);
      return r;
    }
    if (checkpoint - first + 1 >= kMaxSeriesTerms) {
      fail(ErrorCode::kToleranceUnreachable,
           "series remainder does not reach the tolerance within 1e8 terms");
    }
    checkpoint = std::min<std::int64_t>(first + 2 * (checkpoint - first + 1), first + kMaxSeriesTerms - 1);
  }
}

double generalized_bound(const GeneratingFunction& psi, const DecaySequencePair& pair, double p,
                         double rel_tol) {
  const double s = sigma_function(pair, p, rel_tol).value;
  return psi.evaluate(p) * s;
}

GeneratingFunction generalized_generating(const GeneratingFunction& psi,
                                          const DecaySequencePair& pair, double rel_tol) {
  const auto [t, open] = pair.convergence_threshold();
  if (std::isinf(t)) fail(ErrorCode::kEmptyDomain, "the sigma series diverges for every p");
  ExponentInterval dom = psi.domain();
  if (t > dom.lower || (t == dom.lower && open)) {
    if (t >= dom.upper) fail(ErrorCode::kEmptyDomain, "sigma converges nowhere on the psi domain");
    dom.lower = t;
    dom.lower_open = open;
  }
  return GeneratingFunction::composite(
      psi, [pair, rel_tol](double p) { return sigma_function(pair, p, rel_tol).value; }, dom,
      "sigma");
}

double tchebychev_term_bound(const MomentEnvelope& env, double eps, double p, double delta,
                             std::int64_t n) {
  validate_envelope(env);
  check_eps(env.alpha, eps);
  if (!(p > 1.0 / eps)) fail(ErrorCode::kInvalidExponent, "term bound needs p > 1/eps");
  if (!(delta > 0.0)) fail(ErrorCode::kInvalidArgument, "delta must be positive");
  if (n < 1) fail(ErrorCode::kInvalidArgument, "n must be >= 1");
  const double k = env.K.evaluate(p);
  if (k == 0.0) return 0.0;
  const double v =
      std::exp(p * (std::log(k) - std::log(delta)) - p * eps * std::log(static_cast<double>(n)));
  return std::min(1.0, v);
}

double tchebychev_tail_sum(const MomentEnvelope& env, double eps, double p, double delta,
                           std::int64_t N) {
  validate_envelope(env);
  check_eps(env.alpha, eps);
  if (!(p > 1.0 / eps)) fail(ErrorCode::kInvalidExponent, "tail sum needs p > 1/eps");
  if (!(delta > 0.0)) fail(ErrorCode::kInvalidArgument, "delta must be positive");
  if (N < 1) fail(ErrorCode::kInvalidArgument, "N must be >= 1");
  const double k = env.K.evaluate(p);
  if (k == 0.0) return 0.0;
  const double x = p * eps;
  return std::exp(p * (std::log(k) - std::log(delta)) + (1.0 - x) * std::log(static_cast<double>(N))) /
         (x - 1.0);
}

}  // namespace glsreg
