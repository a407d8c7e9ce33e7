// SPDX-License-Identifier: Apache-2.0
#include <numbers>

#include "interval.hpp"
#include "scan.hpp"
#include "support.hpp"

using namespace glsreg;

TEST_SUITE("interval") {
  TEST_CASE("construction and membership") {
    const auto d = ExponentInterval::make(1.0, 4.0);
    CHECK(d.contains(1.0));
    CHECK(d.contains(3.999));
    CHECK_FALSE(d.contains(4.0));
    CHECK(d.bounded());
    const auto open = ExponentInterval::make(2.0, 5.0, true, false);
    CHECK_FALSE(open.contains(2.0));
    CHECK(open.contains(5.0));
    CHECK_FALSE(ExponentInterval::from_one().bounded());
  }

  TEST_CASE("invalid ends") {
    CHECK_ERROR(ExponentInterval::make(0.5, 2.0), kInvalidArgument);
    CHECK_ERROR(ExponentInterval::make(3.0, 3.0), kInvalidArgument);
    CHECK_ERROR(ExponentInterval::make(kInf, kInf), kInvalidArgument);
  }

  TEST_CASE("intersection") {
    const auto a = ExponentInterval::make(1.0, 5.0);
    const auto b = ExponentInterval::make(3.0, kInf, true);
    const auto c = intersect(a, b);
    REQUIRE(c.has_value());
    CHECK(c->lower == 3.0);
    CHECK(c->lower_open);
    CHECK(c->upper == 5.0);
    CHECK_FALSE(intersect(ExponentInterval::make(1.0, 2.0), ExponentInterval::make(2.0, 3.0)).has_value());
  }
}

TEST_SUITE("scan") {
  TEST_CASE("interior maximum is refined") {
    const auto r = scan_supremum([](double x) { return -(x - 3.0) * (x - 3.0); }, {1.0, 10.0, false, false});
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.argmax == doctest::Approx(3.0).epsilon(1e-6));
    CHECK_FALSE(r.unbounded);
  }

  TEST_CASE("growth at infinity is unbounded") {
    CHECK(scan_supremum([](double x) { return x; }, {1.0, kInf}).unbounded);
    CHECK(scan_supremum([](double x) { return std::log(x); }, {1.0, kInf}).unbounded);
  }

  TEST_CASE("bounded increase at infinity is a finite limit") {
    const auto r = scan_supremum([](double x) { return 1.0 - 1.0 / x; }, {1.0, kInf});
    CHECK_FALSE(r.unbounded);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("increase past the cap that turns over") {
    // Peak at x = 1e6, beyond the default cap of 1e4.
    const auto r = scan_supremum([](double x) { return std::log(x) - x / 1e6; }, {1.0, kInf});
    CHECK_FALSE(r.unbounded);
    CHECK(r.value == doctest::Approx(std::log(1e6) - 1.0).epsilon(1e-9));
  }

  TEST_CASE("open upper end") {
    const auto div = scan_supremum([](double x) { return 1.0 / (2.0 - x); }, {1.0, 2.0, false, true});
    CHECK(div.unbounded);
    const auto lim = scan_supremum([](double x) { return x; }, {1.0, 2.0, false, true});
    CHECK_FALSE(lim.unbounded);
    CHECK(lim.boundary_limit);
    CHECK(lim.value == doctest::Approx(2.0).epsilon(1e-9));
  }

  TEST_CASE("golden section") {
    const auto [x, v] = golden_section_max([](double t) { return std::sin(t); }, 0.0, 3.0);
    CHECK(x == doctest::Approx(std::numbers::pi / 2).epsilon(1e-7));
    CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("geometric grid ends are exact") {
    const auto g = geometric_grid(1.0, 1e4, 512);
    CHECK(g.size() == 512);
    CHECK(g.front() == 1.0);
    CHECK(g.back() == 1e4);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  }
}
