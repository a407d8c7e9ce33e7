// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "generating_function.hpp"
#include "sequence.hpp"

namespace glsreg {

/// ||Z_n||_p <= K(p) n^-alpha for n >= index_start.
struct MomentEnvelope {
  GeneratingFunction K;
  double alpha = 1.0;
  std::int64_t index_start = 1;
};

/// Throws kInvalidArgument unless alpha > 0 and index_start >= 1.
void validate_envelope(const MomentEnvelope& env);

/// K(p) (p eps - 1)^(-1/p).
/// Errors: kInvalidEpsilon unless 0 < eps < min(1, alpha); kInvalidExponent if p <= 1/eps.
double kloeden_lp_bound(const MomentEnvelope& env, double eps, double p);

struct RegulatorNormBound {
  GeneratingFunction kappa;
  double bound = 1.0;
};

/// (kappa[K], 1): the regulator has norm at most 1 in G kappa.
RegulatorNormBound gls_regulator_norm_bound(const MomentEnvelope& env, double eps);

/// Hard cap on summed terms.
inline constexpr std::int64_t kMaxSeriesTerms = 100'000'000;

struct SigmaResult {
  double value = 0.0;          // sigma(p)
  double sum = 0.0;            // estimate of sum r_n^p
  double partial = 0.0;        // sum over the summed terms
  double remainder_lower = 0.0;
  double remainder_upper = 0.0;
  std::int64_t terms = 0;
  bool closed_form = false;
};

/// sigma(p) = (sum_n (eps_n/beta_n)^p)^(1/p). Geometric pairs use the closed
/// form; everything else goes through sigma_series.
/// Errors: kInvalidExponent if p < 1; kDivergent; kToleranceUnreachable.
SigmaResult sigma_function(const DecaySequencePair& pair, double p, double rel_tol);

/// Truncated summation with a certified remainder bracket [L, U]: ratio test
/// for geometric-type ratios, integral test for power-type ones. Stops once
/// U - L <= rel_tol * partial and returns partial + (L + U)/2.
SigmaResult sigma_series(const DecaySequencePair& pair, double p, double rel_tol);

/// (scale ratio) (1 - delta^p)^(-1/p), summed from n = 0.
/// Errors: kInvalidArgument for non-geometric pairs.
double sigma_closed_form(const DecaySequencePair& pair, double p);

/// psi(p) sigma(p).
double generalized_bound(const GeneratingFunction& psi, const DecaySequencePair& pair, double p,
                         double rel_tol = 1e-12);

/// gamma = psi * sigma on the part of psi's domain where the series converges.
/// Errors: kEmptyDomain if that part is empty.
GeneratingFunction generalized_generating(const GeneratingFunction& psi,
                                          const DecaySequencePair& pair, double rel_tol = 1e-12);

/// min(1, K(p)^p delta^-p n^(-p eps)).
/// Errors: kInvalidEpsilon, kInvalidExponent (p <= 1/eps), kInvalidArgument
/// (delta <= 0 or n < 1).
double tchebychev_term_bound(const MomentEnvelope& env, double eps, double p, double delta,
                             std::int64_t n);

/// Integral-test bound on the sum of the unclamped terms over n > N:
/// K^p delta^-p N^(1 - p eps) / (p eps - 1), N >= 1.
double tchebychev_tail_sum(const MomentEnvelope& env, double eps, double p, double delta,
                           std::int64_t N);

}  // namespace glsreg
