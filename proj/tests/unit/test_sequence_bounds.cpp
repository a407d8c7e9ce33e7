// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "generating_function.hpp"
#include "regulator_bounds.hpp"
#include "sequence.hpp"
#include "support.hpp"

using namespace glsreg;
using nlohmann::json;

namespace {

DecaySequencePair geometric_pair(double q, double Q) {
  return DecaySequencePair(SequenceSpec::geometric(q), SequenceSpec::geometric(Q));
}

MomentEnvelope unit_envelope() { return {GeneratingFunction::constant(1.0), 1.0, 1}; }

}  // namespace

TEST_SUITE("sequences") {
  TEST_CASE("values") {
    const auto s = SequenceSpec::power_log(2.0, 1.0, 3.0);
    CHECK(s.value(4) == doctest::Approx(3.0 / 16.0 * std::log(5.0)).epsilon(1e-15));
    CHECK(s.log_value(4) == doctest::Approx(std::log(s.value(4))).epsilon(1e-15));
    CHECK(SequenceSpec::geometric(0.5).value(0) == 1.0);
    CHECK(SequenceSpec::geometric(0.5).value(3) == 0.125);
    const auto sv = SequenceSpec::power_slowly_varying(1.0, {{1.0, 2.0}, {100.0, 8.0}});
    CHECK(sv.slowly_varying(10.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(sv.slowly_varying(1e6) == 8.0);
  }

  TEST_CASE("json round trip and errors") {
    const json spec = json::parse(R"({"form":"power_log","theta":1.5,"nu":2})");
    const auto s = SequenceSpec::from_json(spec);
    CHECK(s.alpha() == 1.5);
    CHECK(s.log_power() == -2.0);
    CHECK(SequenceSpec::from_json(s.to_json()).value(7) == s.value(7));
    CHECK(SequenceSpec::from_json(json::parse(R"({"form":"geometric","Q":0.25})")).base() == 0.25);
    CHECK_ERROR(SequenceSpec::from_json(json::parse(R"({"form":"geometric","q":0.5,"Q":0.5})")), kConfigError);
    CHECK_ERROR(SequenceSpec::from_json(json::parse(R"({"form":"geometric","q":1.5})")), kConfigError);
    CHECK_ERROR(SequenceSpec::from_json(json::parse(R"({"form":"power_log","alpha":1,"zz":1})")), kConfigError);
    CHECK_ERROR(SequenceSpec::from_json(json::parse(R"({"form":"spiral"})")), kConfigError);
    CHECK_ERROR(SequenceSpec::power_slowly_varying(1.0, {{2.0, 1.0}, {1.0, 1.0}}), kInvalidArgument);
  }

  TEST_CASE("pairs") {
    CHECK(geometric_pair(0.25, 0.5).delta() == 0.5);
    CHECK(geometric_pair(0.25, 0.5).first_index() == 0);
    CHECK_ERROR(geometric_pair(0.5, 0.25), kInvalidArgument);
    const DecaySequencePair p(SequenceSpec::power_log(1.0, 0.0), SequenceSpec::power_log(0.5, 0.0));
    CHECK(p.first_index() == 1);
    CHECK(p.convergence_threshold() == std::pair{2.0, true});
    CHECK_FALSE(p.summable(2.0));
    CHECK(p.summable(2.0001));
    const DecaySequencePair logp(SequenceSpec::power_log(1.0, -2.0), SequenceSpec::power_log(0.5, 0.0));
    CHECK(logp.convergence_threshold() == std::pair{2.0, false});
    CHECK(logp.summable(2.0));
    CHECK(geometric_pair(0.25, 0.5).convergence_threshold().first == 0.0);
  }
}

TEST_SUITE("regulator_bounds") {
  TEST_CASE("kloeden bound") {
    const auto env = unit_envelope();
    CHECK(kloeden_lp_bound(env, 0.5, 2.5) == doctest::Approx(1.7411011265922483).epsilon(1e-14));
    CHECK(kloeden_lp_bound(env, 0.5, 3.0) == doctest::Approx(1.2599210498948732).epsilon(1e-14));
    CHECK_ERROR(kloeden_lp_bound(env, 0.5, 2.0), kInvalidExponent);
    CHECK_ERROR(kloeden_lp_bound(env, 1.0, 3.0), kInvalidEpsilon);
    CHECK_ERROR(kloeden_lp_bound({GeneratingFunction::constant(1.0), 0.4, 1}, 0.5, 3.0), kInvalidEpsilon);
    CHECK_ERROR(validate_envelope({GeneratingFunction::constant(1.0), 1.0, 0}), kInvalidArgument);
    CHECK(gls_regulator_norm_bound(env, 0.5).bound == 1.0);
    CHECK(gls_regulator_norm_bound(env, 0.5).kappa(4.0) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("sigma closed form") {
    const auto pair = geometric_pair(0.25, 0.5);
    CHECK(sigma_closed_form(pair, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sigma_closed_form(pair, 2.0) == doctest::Approx(1.1547005383792515).epsilon(1e-15));
    CHECK(sigma_closed_form(pair, 5.0) == doctest::Approx(1.0063699419970278).epsilon(1e-15));
    const auto r = sigma_function(pair, 2.0, 1e-12);
    CHECK(r.closed_form);
    CHECK(r.value == sigma_closed_form(pair, 2.0));
    const auto scaled = DecaySequencePair(SequenceSpec::geometric(0.25, 3.0), SequenceSpec::geometric(0.5, 1.5));
    CHECK(sigma_closed_form(scaled, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
    const DecaySequencePair power(SequenceSpec::power_log(1.0, 0.0), SequenceSpec::power_log(0.5, 0.0));
    CHECK_ERROR(sigma_closed_form(power, 4.0), kInvalidArgument);
  }

  TEST_CASE("sigma series") {
    // sum n^-2 = pi^2/6.
    const DecaySequencePair power(SequenceSpec::power_log(1.0, 0.0), SequenceSpec::power_log(0.5, 0.0));
    const auto r = sigma_function(power, 4.0, 1e-12);
    CHECK_FALSE(r.closed_form);
    CHECK(r.value == doctest::Approx(1.1324971656308).epsilon(1e-11));
    CHECK(r.remainder_lower <= r.remainder_upper);
    CHECK_ERROR(sigma_function(power, 2.0, 1e-12), kDivergent);
    CHECK_ERROR(sigma_function(power, 0.5, 1e-12), kInvalidExponent);
    // Series agrees with the closed form on a geometric pair.
    const auto g = geometric_pair(0.3, 0.6);
    for (double p : {1.0, 1.7, 3.0}) {
      CHECK(sigma_series(g, p, 1e-12).value == doctest::Approx(sigma_closed_form(g, p)).epsilon(1e-11));
    }
  }

  TEST_CASE("generalized bound") {
    const auto psi = GeneratingFunction::power_root(1.0);
    const auto pair = geometric_pair(0.25, 0.5);
    CHECK(generalized_bound(psi, pair, 3.0) == doctest::Approx(3.1365477514482613).epsilon(1e-14));
    const DecaySequencePair power(SequenceSpec::power_log(1.0, 0.0), SequenceSpec::power_log(0.5, 0.0));
    const auto gamma = generalized_generating(psi, power);
    CHECK(gamma.domain().lower == 2.0);
    CHECK(gamma.domain().lower_open);
    CHECK(gamma(4.0) == doctest::Approx(4.0 * 1.1324971656308).epsilon(1e-11));
    const DecaySequencePair flat(SequenceSpec::power_log(1.0, 0.0), SequenceSpec::power_log(1.0, 0.0));
    CHECK_ERROR(generalized_generating(psi, flat), kEmptyDomain);
  }

  TEST_CASE("tchebychev terms") {
    const auto env = unit_envelope();
    CHECK(tchebychev_term_bound(env, 0.5, 4.0, 1.0, 1) == 1.0);
    CHECK(tchebychev_term_bound(env, 0.5, 4.0, 1.0, 10) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(tchebychev_term_bound(env, 0.5, 4.0, 1.0, 40) == doctest::Approx(0.000625).epsilon(1e-14));
    CHECK(tchebychev_tail_sum(env, 0.5, 4.0, 1.0, 10) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK_ERROR(tchebychev_term_bound(env, 0.5, 4.0, 0.0, 1), kInvalidArgument);
    CHECK_ERROR(tchebychev_term_bound(env, 0.5, 4.0, 1.0, 0), kInvalidArgument);
    CHECK_ERROR(tchebychev_term_bound(env, 0.5, 2.0, 1.0, 1), kInvalidExponent);
  }

  TEST_CASE("sigma is nonincreasing in p") {
    const DecaySequencePair power(SequenceSpec::power_log(1.5, 0.0), SequenceSpec::power_log(0.5, 1.0));
    double prev = kInf;
    for (double p = 1.25; p < 8.0; p += 0.75) {
      const double v = sigma_function(power, p, 1e-10).value;
      CHECK(v <= prev * (1.0 + 1e-9));
      prev = v;
    }
  }
}
