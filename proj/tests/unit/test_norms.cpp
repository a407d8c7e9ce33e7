// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include "generating_function.hpp"
#include "moment_function.hpp"
#include "norms.hpp"
#include "rng.hpp"
#include "support.hpp"

using namespace glsreg;

namespace {
constexpr double kE1 = 0.36787944117144232;   // e^-1
constexpr double kE4 = 0.018315638888734180;  // e^-4
}  // namespace

TEST_SUITE("norms") {
  TEST_CASE("unit examples") {
    CHECK(gls_norm(MomentFunction::constant(1.0), GeneratingFunction::extremal(2.0)).value == 1.0);
    const auto exp_m = MomentFunction::standard_exponential();
    const auto r = gls_norm(exp_m, natural_function(exp_m));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    const auto pr = gls_norm(exp_m, GeneratingFunction::power_root(1.0));
    CHECK(pr.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pr.argmax == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("extremal reduces to an Lr norm") {
    const auto r = gls_norm(MomentFunction::standard_exponential(), GeneratingFunction::extremal(4.0));
    CHECK(r.value == doctest::Approx(2.2133638394006432).epsilon(1e-13));
    CHECK(r.argmax == 4.0);
  }

  TEST_CASE("unbounded ratio") {
    const auto r = gls_norm(MomentFunction::standard_exponential(), GeneratingFunction::constant(1.0));
    CHECK(r.unbounded);
    CHECK(std::isinf(r.value));
  }

  TEST_CASE("empty common domain") {
    const auto m = MomentFunction::tabulated({{3.0, 1.0, 0.0}, {4.0, 1.0, 0.0}}, MomentSource::kAnalytic, 0);
    const auto psi = GeneratingFunction::constant(1.0, ExponentInterval::make(1.0, 2.0));
    CHECK_ERROR(gls_norm(m, psi), kEmptyDomain);
  }

  TEST_CASE("grand norm") {
    CHECK(classical_grand_norm(MomentFunction::constant(1.0), 2.0).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(classical_grand_norm(MomentFunction::constant(0.0), 2.0).value == 0.0);
    CHECK(classical_grand_norm(MomentFunction::constant(3.0), 2.0).value == doctest::Approx(3.0).epsilon(1e-9));
    CHECK_ERROR(classical_grand_norm(MomentFunction::constant(1.0), 1.0), kEmptyDomain);
  }

  TEST_CASE("young-fenchel conjugate") {
    const auto c = young_fenchel(GeneratingFunction::constant(1.0), -1.0);
    CHECK(c.value == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(c.argmax == doctest::Approx(1.0));
    CHECK(young_fenchel(GeneratingFunction::extremal(2.0), 3.0).value == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(young_fenchel(GeneratingFunction::constant(1.0), 3.0).unbounded);
    // power_root(1): h*(v) = e^(v-1) at p = e^(v-1).
    for (double v : {1.0, 2.0, 3.5, 5.0}) {
      CHECK(young_fenchel(GeneratingFunction::power_root(1.0), v).value ==
            doctest::Approx(std::exp(v - 1.0)).epsilon(1e-9));
    }
  }

  TEST_CASE("tail bounds") {
    CHECK(exponential_tail_bound(GeneratingFunction::power_root(1.0), std::exp(1.0)) ==
          doctest::Approx(kE1).epsilon(1e-12));
    CHECK(exponential_tail_bound(GeneratingFunction::extremal(2.0), std::exp(2.0)) ==
          doctest::Approx(kE4).epsilon(1e-12));
    CHECK(exponential_tail_bound(GeneratingFunction::constant(1.0), std::exp(3.0)) == 0.0);
    CHECK_ERROR(exponential_tail_bound(GeneratingFunction::power_root(1.0), 2.0), kDomainError);
    for (double t : {3.0, 10.0, 40.0}) {
      const auto psi = GeneratingFunction::two_sided(6.0, 0.5, 0.5);
      CHECK(markov_infimum(psi, t) == doctest::Approx(exponential_tail_bound(psi, t)).epsilon(1e-9));
    }
  }
}

TEST_SUITE("norm_properties") {
  TEST_CASE("homogeneity and anti-monotonicity on random instances") {
    const DrawStream s(20240611);
    const auto base = MomentFunction::standard_normal();
    for (std::uint64_t i = 0; i < 40; ++i) {
      const double c = std::exp(6.0 * s.uniform(i, 0) - 3.0);
      const double m = 1.0 + 0.9 * s.uniform(i, 1);
      const auto psi = GeneratingFunction::power_root(m);
      const double n1 = gls_norm(base, psi).value;
      const double nc = gls_norm(base.scaled(c), psi).value;
      CHECK(close_rel(nc, c * n1, 1e-9));
      // power_root(m) grows slower for larger m, so the norm is larger.
      const double n2 = gls_norm(base, GeneratingFunction::power_root(m + 0.1)).value;
      CHECK(n2 >= n1 * (1.0 - 1e-9));
    }
  }

  TEST_CASE("tail bound is nonincreasing and conjugate is convex") {
    const auto psi = GeneratingFunction::two_sided(5.0, 0.3, 0.7);
    double prev = 1.0;
    for (double t = std::exp(1.0); t < 1e4; t *= 1.7) {
      const double b = exponential_tail_bound(psi, t);
      CHECK(b <= prev + 1e-15);
      CHECK(b >= 0.0);
      prev = b;
    }
    for (double v = 0.5; v < 6.0; v += 0.5) {
      const double a = young_fenchel(psi, v - 0.25).value;
      const double b = young_fenchel(psi, v + 0.25).value;
      const double mid = young_fenchel(psi, v).value;
      CHECK(mid <= 0.5 * (a + b) + 1e-9 * std::abs(mid));
    }
  }
}
