// SPDX-License-Identifier: Apache-2.0
#include <vector>

#include "generating_function.hpp"
#include "moment_function.hpp"
#include "support.hpp"

using namespace glsreg;
using nlohmann::json;

TEST_SUITE("generating_functions") {
  TEST_CASE("closed forms") {
    CHECK(GeneratingFunction::power_root(1.0)(4.0) == 4.0);
    CHECK(GeneratingFunction::power_root(2.0)(9.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(GeneratingFunction::two_sided(2.0, 1.0, 0.0)(1.5) == doctest::Approx(2.0).epsilon(1e-15));
    const auto ext = GeneratingFunction::extremal(3.0);
    CHECK(std::isinf(ext(2.0)));
    CHECK(ext(3.0) == 1.0);
    CHECK(ext.extremal_point() == 3.0);
  }

  TEST_CASE("outside the domain evaluates to infinity") {
    const auto ts = GeneratingFunction::two_sided(2.0, 1.0, 1.0);
    CHECK(std::isinf(ts(2.0)));
    CHECK(std::isinf(ts(1.0)));
    CHECK(std::isinf(GeneratingFunction::power_root(1.0)(0.5)));
  }

  TEST_CASE("tabulated interpolation is log-linear") {
    const auto t = GeneratingFunction::tabulated({{1.0, 1.0}, {3.0, 4.0}});
    CHECK(t(2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(t(3.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(std::isinf(t(3.5)));
  }

  TEST_CASE("construction errors") {
    CHECK_ERROR(GeneratingFunction::power_root(0.0), kInvalidArgument);
    CHECK_ERROR(GeneratingFunction::two_sided(1.0, 1.0, 1.0), kInvalidArgument);
    CHECK_ERROR(GeneratingFunction::two_sided(2.0, -1.0, 0.0), kInvalidArgument);
    CHECK_ERROR(GeneratingFunction::extremal(0.5), kInvalidArgument);
    CHECK_ERROR(GeneratingFunction::constant(0.0), kInvalidArgument);
    CHECK_ERROR(GeneratingFunction::tabulated({{1.0, 1.0}}), kInvalidArgument);
    CHECK_ERROR(GeneratingFunction::tabulated({{1.0, 1.0}, {2.0, 0.0}}), kNonPositiveGenerating);
    CHECK_ERROR(GeneratingFunction::tabulated({{2.0, 1.0}, {1.5, 1.0}}), kInvalidArgument);
  }

  TEST_CASE("standing positivity") {
    check_standing_positivity(GeneratingFunction::two_sided(3.0, 1.0, 2.0));
    const auto vanishing = GeneratingFunction::composite(
        GeneratingFunction::constant(1.0), [](double p) { return p - 1.5; },
        ExponentInterval::make(1.0, 2.0), "p-1.5");
    CHECK_ERROR(check_standing_positivity(vanishing), kNonPositiveGenerating);
  }

  TEST_CASE("kloeden generating function") {
    const auto one = GeneratingFunction::constant(1.0);
    const auto k = kloeden_generating(one, 1.0, 0.5);
    CHECK(k(4.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k(3.0) == doctest::Approx(1.2599210498948732).epsilon(1e-14));
    CHECK(kloeden_generating(GeneratingFunction::power_root(1.0), 1.0, 0.5)(4.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(k.domain().lower == 2.0);
    CHECK(k.domain().lower_open);
    CHECK(k(2.0 + 1e-12) > 1e6);
    CHECK_ERROR(kloeden_generating(one, 1.0, 1.0), kInvalidEpsilon);
    CHECK_ERROR(kloeden_generating(one, 0.4, 0.5), kInvalidEpsilon);
    CHECK_ERROR(kloeden_generating(GeneratingFunction::two_sided(3.0, 0.0, 0.0), 1.0, 0.25), kEmptyDomain);
  }

  TEST_CASE("natural function") {
    const auto unit = natural_function(MomentFunction::constant(1.0));
    CHECK(unit(1.0) == 1.0);
    CHECK(unit(50.0) == 1.0);
    // E theta^4 = 24, fixed by quadrature of t^4 e^-t.
    const auto exp_nat = natural_function(MomentFunction::standard_exponential());
    CHECK(exp_nat(4.0) == doctest::Approx(2.2133638394006432).epsilon(1e-13));
    CHECK(exp_nat(2.5) == doctest::Approx(1.6167038902915642).epsilon(1e-13));
    CHECK(exp_nat(6.0) == doctest::Approx(2.9937951655239090).epsilon(1e-13));
    const MomentFunction family[] = {MomentFunction::constant(1.0), MomentFunction::standard_exponential()};
    const auto fam = natural_function(std::span<const MomentFunction>(family));
    for (double p : {1.0, 1.5, 4.0, 10.0}) CHECK(fam(p) == doctest::Approx(exp_nat(p)).epsilon(1e-15));
    CHECK_ERROR(natural_function(MomentFunction::constant(0.0)), kNonPositiveGenerating);
  }

  TEST_CASE("constant extension below the anchor") {
    const auto m = MomentFunction::standard_exponential();
    const auto nu = GeneratingFunction::constant_extended_natural(3.0, m);
    CHECK(nu(1.5) == doctest::Approx(m.value(3.0)).epsilon(1e-15));
    CHECK(nu(5.0) == doctest::Approx(m.value(5.0)).epsilon(1e-15));
    CHECK_ERROR(GeneratingFunction::constant_extended_natural(0.5, m), kInvalidArgument);
  }

  TEST_CASE("json specs") {
    CHECK(generating_from_json(json{{"form", "power_root"}, {"m", 1}})(4.0) == 4.0);
    CHECK(generating_from_json(json{{"form", "two_sided"}, {"b", 2}, {"alpha", 1}, {"beta", 0}})(1.5) ==
          doctest::Approx(2.0));
    CHECK(generating_from_json(json{{"form", "extremal"}, {"r", 2}})(2.0) == 1.0);
    CHECK(generating_from_json(json{{"form", "constant"}, {"c", 2}, {"lower", 1}, {"upper", 3}})(2.5) == 2.0);
    CHECK(generating_from_json(json::parse(R"({"form":"table","points":[[1,1],[3,4]]})"))(2.0) ==
          doctest::Approx(2.0));
    CHECK_ERROR(generating_from_json(json{{"form", "power_root"}, {"m", 1}, {"x", 0}}), kConfigError);
    CHECK_ERROR(generating_from_json(json{{"form", "nope"}}), kConfigError);
    CHECK_ERROR(generating_from_json(json{{"form", "power_root"}, {"m", -1}}), kConfigError);
    CHECK_ERROR(generating_from_json(json::array()), kConfigError);
  }
}

TEST_SUITE("moment_functions") {
  TEST_CASE("analytic families") {
    CHECK(MomentFunction::standard_exponential().value(4.0) == doctest::Approx(2.2133638394006432).epsilon(1e-13));
    // E|g|^3 = 2 sqrt(2/pi).
    CHECK(MomentFunction::standard_normal().value(3.0) == doctest::Approx(1.1685752549624655).epsilon(1e-13));
    CHECK(MomentFunction::constant(-2.0).value(7.0) == 2.0);
    CHECK(MomentFunction::standard_exponential().scaled(-3.0).value(4.0) ==
          doctest::Approx(3.0 * 2.2133638394006432).epsilon(1e-13));
  }

  TEST_CASE("empirical moments") {
    const std::vector<double> ones{1, 1, 1, 1};
    const auto m = empirical_moment(ones, 7.0);
    CHECK(m.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.half_width == 0.0);
    const std::vector<double> two{0, 2};
    CHECK(empirical_moment(two, 1.0).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(empirical_moment(two, 2.0).value == doctest::Approx(1.4142135623730951).epsilon(1e-15));
    CHECK_ERROR(empirical_moment(std::vector<double>{}, 2.0), kEmptySample);
    CHECK_ERROR(empirical_moment(two, 0.5), kInvalidExponent);
  }

  TEST_CASE("large exponents do not overflow") {
    const std::vector<double> xs{1e200, 2e200};
    const auto m = empirical_moment(xs, 10.0);
    CHECK(std::isfinite(m.value));
    CHECK(m.value > 1e200);
  }

  TEST_CASE("empirical tails") {
    const std::vector<double> xs{1, 2, 3, 4};
    CHECK(empirical_tail(xs, 2.5).value == 0.5);
    CHECK(empirical_tail(std::vector<double>{1}, 0.0).value == 1.0);
    const auto none = empirical_tail(std::vector<double>{1}, 5.0);
    CHECK(none.value == 0.0);
    CHECK(none.half_width > 0.0);
    CHECK_ERROR(empirical_tail(std::vector<double>{}, 1.0), kEmptySample);
  }

  TEST_CASE("tables and validation") {
    const auto t = MomentFunction::tabulated({{1.0, 1.0, 0.0}, {3.0, 4.0, 0.0}}, MomentSource::kAnalytic, 0);
    CHECK(t.value(2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(validate_moments(MomentFunction::standard_exponential()).nondecreasing);
    CHECK(validate_moments(MomentFunction::standard_exponential()).log_convex);
    const auto bad = MomentFunction::tabulated({{1.0, 2.0, 0.0}, {3.0, 1.0, 0.0}}, MomentSource::kAnalytic, 0);
    CHECK_FALSE(validate_moments(bad).nondecreasing);
    CHECK_ERROR(MomentFunction::tabulated({{1.0, 1.0, 0.0}}, MomentSource::kAnalytic, 0), kInvalidArgument);
  }

  TEST_CASE("lyapunov monotonicity of empirical moments") {
    std::vector<double> xs;
    for (int i = 1; i <= 200; ++i) xs.push_back(std::log(1.0 + i));
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 4.0, 8.0, 16.0}) {
      const double v = empirical_moment(xs, p).value;
      CHECK(v >= prev);
      prev = v;
    }
  }
}
