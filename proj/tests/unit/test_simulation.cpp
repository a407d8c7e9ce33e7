// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstring>
#include <numeric>

#include "criteria.hpp"
#include "moment_function.hpp"
#include "rng.hpp"
#include "simulation.hpp"
#include "support.hpp"

using namespace glsreg;

TEST_SUITE("rng") {
  TEST_CASE("philox known answers") {
    using P = Philox4x32;
    CHECK(P::block({0, 0, 0, 0}, {0, 0}) == P::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(P::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          P::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(P::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          P::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  }

  TEST_CASE("streams") {
    const DrawStream a(7), b(7), c(8);
    CHECK(a.bits(3, 9) == b.bits(3, 9));
    CHECK(a.bits(3, 9) != c.bits(3, 9));
    CHECK(a.bits(3, 9) != a.bits(4, 9));
    double mean = 0.0;
    for (std::uint64_t n = 0; n < 100000; ++n) {
      const double u = a.uniform_open(0, n);
      CHECK_FALSE((u <= 0.0 || u >= 1.0));
      mean += a.exponential(1, n);
    }
    CHECK(mean / 1e5 == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_SUITE("simulation") {
  TEST_CASE("horizon choice") {
    const auto m = SequenceModel::exponential_power(1.0);
    CHECK(choose_horizon(m, 0.5, 1e-6, 1.0) == 304);
    CHECK(choose_horizon(m, 0.5, 1e-8, 1.0) == 496);
    CHECK(discarded_tail_bound(m, 0.5, 304, 1.0) <= 1e-6);
    CHECK(discarded_tail_bound(m, 0.5, 303, 1.0) > 1e-6);
  }

  TEST_CASE("exact tail") {
    CHECK(exact_eta_tail(1.0, 0.5, 1.0, 1e-15) == doctest::Approx(0.84184403356789631).epsilon(1e-13));
    CHECK(exact_eta_tail(1.0, 0.5, 1.0, 1e-15, 2) == doctest::Approx(0.74980094505200487).epsilon(1e-13));
    CHECK(exact_eta_tail(1.0, 0.5, 2.0, 1e-15) == doctest::Approx(0.25482225721611142).epsilon(1e-13));
    CHECK(exact_eta_tail(1.0, 0.5, 5.0, 1e-15) == doctest::Approx(7.8202816221465945e-3).epsilon(1e-12));
    CHECK(exact_eta_tail(1.0, 0.5, 10.0, 1e-18) == doctest::Approx(4.6153579043838635e-5).epsilon(1e-11));
    CHECK(exact_eta_tail(1.0, 0.5, 20.0, 1e-22) == doctest::Approx(2.0616748813508847e-9).epsilon(1e-10));
    CHECK_ERROR(exact_eta_tail(1.0, 0.5, 0.0, 1e-15), kDomainError);
    CHECK_ERROR(exact_eta_tail(1.0, 1.5, 1.0, 1e-15), kInvalidEpsilon);
  }

  TEST_CASE("bonferroni sums") {
    const auto s = bonferroni_sums(0.5, 1.0, 1e-16);
    CHECK(s.sigma1 == doctest::Approx(1.6704068179663397).epsilon(1e-13));
    CHECK(s.sigma2 == doctest::Approx(1.2544063681916564).epsilon(1e-13));
    const auto far = bonferroni_sums(0.5, 100.0, 1e-300);
    CHECK(far.sigma2 == doctest::Approx(1.4191789881787762e-105).epsilon(1e-10));
    for (double u : {0.5, 1.0, 3.0, 10.0}) {
      const auto b = bonferroni_sums(0.5, u, 1e-16);
      const double t = exact_eta_tail(1.0, 0.5, u, 1e-16);
      CHECK(t <= b.sigma1 + 1e-13);
      CHECK(t >= b.sigma1 - b.sigma2 - 1e-13);
    }
  }

  TEST_CASE("asymptotic constant and moments") {
    CHECK(asymptotic_tail_constant(0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(asymptotic_tail_constant(0.25) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(exact_eta_moment(1.0, 0.5, 1.0, 1e-12) == doctest::Approx(1.694979029410502).epsilon(1e-10));
    CHECK(exact_eta_moment(1.0, 0.5, 1.5, 1e-12) == doctest::Approx(1.78920093941975237).epsilon(1e-10));
    CHECK_ERROR(exact_eta_moment(1.0, 0.5, 2.0, 1e-12), kMomentInfinite);
    CHECK_ERROR(exact_eta_moment(1.0, 0.5, 0.5, 1e-12), kInvalidExponent);
  }

  TEST_CASE("fixed one-term horizon gives the innovation") {
    SimulationPlan plan;
    plan.trajectories = 100000;
    plan.truncation = Truncation::fixed(1);
    plan.seed = 11;
    const auto run = simulate_eta(plan);
    const auto v = run.values();
    CHECK(std::accumulate(v.begin(), v.end(), 0.0) / v.size() == doctest::Approx(1.0).epsilon(0.01));
  }

  TEST_CASE("determinism across threads") {
    SimulationPlan plan;
    plan.trajectories = 3000;
    plan.truncation = Truncation::fixed(200);
    plan.seed = 99;
    plan.threads = 1;
    const auto a = simulate_eta(plan).values();
    plan.threads = 4;
    const auto b = simulate_eta(plan).values();
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
    plan.seed = 100;
    CHECK(simulate_eta(plan).values() != a);
  }

  TEST_CASE("batch matches simulate") {
    const auto model = SequenceModel::exponential_power(1.0);
    const auto batch = simulate_batch(model, 500, 150, 5, 2);
    SimulationPlan plan;
    plan.trajectories = 500;
    plan.truncation = Truncation::fixed(150);
    plan.seed = 5;
    const auto eta = simulate_eta(plan).values();
    const auto ex = extract_regulator(batch, regulator_weights(1.0, 0.5));
    REQUIRE(ex.values.size() == eta.size());
    CHECK(std::memcmp(ex.values.data(), eta.data(), eta.size() * sizeof(double)) == 0);
  }

  TEST_CASE("plan validation") {
    SimulationPlan plan;
    plan.eps = 1.0;
    CHECK_ERROR(plan.validate(), kInvalidEpsilon);
    plan.eps = 0.5;
    plan.trajectories = 0;
    CHECK_ERROR(plan.validate(), kInvalidArgument);
    CHECK(SimulationPlan::from_json(SimulationPlan{}.to_json()).to_json() == SimulationPlan{}.to_json());
  }

  TEST_CASE("empirical tail stays near the exact one") {
    SimulationPlan plan;
    plan.trajectories = 20000;
    plan.truncation = Truncation::target(1e-7, 1.0);
    plan.seed = 3;
    const auto v = simulate_eta(plan).values();
    for (double u : {1.0, 2.0, 5.0}) {
      const auto e = empirical_tail(v, u);
      CHECK(std::abs(e.value - exact_eta_tail(1.0, 0.5, u, 1e-15)) <= 4.0 * e.half_width + 1e-7);
    }
  }
}

TEST_SUITE("criteria") {
  TEST_CASE("examples") {
    const auto zeros = TrajectoryBatch::make(2, 3, 1, std::vector<double>(6, 0.0));
    const auto ones = TrajectoryBatch::make(2, 3, 1, std::vector<double>(6, 1.0));
    CHECK(criterion_functional(zeros, 1).value == 0.0);
    CHECK(criterion_functional(ones, 2).value == 0.5);
    CHECK(union_criterion(zeros, 0.1, 1).value == 1.0);
    const auto fives = TrajectoryBatch::make(2, 3, 1, std::vector<double>(6, 5.0));
    CHECK(union_criterion(fives, 1.0, 1).value == 0.0);
    CHECK_ERROR(criterion_functional(zeros, 4), kIndexOutOfRange);
    CHECK_ERROR(union_criterion(zeros, 0.0, 1), kDomainError);
    const std::vector<double> x{1.0}, y{0.0}, z{1.0, 2.0};
    CHECK(rho_distance(x, x) == 0.0);
    CHECK(rho_distance(x, y) == 0.5);
    CHECK_ERROR(rho_distance(x, z), kLengthMismatch);
    CHECK_ERROR(rho_distance(std::vector<double>{}, std::vector<double>{}), kEmptySample);
  }

  TEST_CASE("regulator extraction") {
    const auto zeros = TrajectoryBatch::make(1, 3, 1, std::vector<double>(3, 0.0));
    CHECK(extract_regulator(zeros, SequenceSpec::geometric(0.5, 2.0)).values[0] == 0.0);
    const auto b = TrajectoryBatch::make(1, 3, 1, {1.0, 0.5, 0.25});
    CHECK(extract_regulator(b, SequenceSpec::geometric(0.5, 2.0)).values[0] == 1.0);
  }

  TEST_CASE("profile is nonincreasing and factorises") {
    const auto batch = simulate_batch(SequenceModel::gaussian_power(0.8), 400, 120, 17, 0);
    const auto prof = criterion_profile(batch);
    REQUIRE(prof.size() == 120);
    for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof[i].value <= prof[i - 1].value);
    const auto delta = regulator_weights(0.8, 0.3);
    const auto ex = extract_regulator(batch, delta);
    std::size_t bad = 0;
    for (std::int64_t t = 0; t < batch.trajectories; ++t) {
      for (std::int64_t j = 0; j < batch.length; ++j) {
        if (batch.at(t, j) > ex.values[t] * delta.value(batch.index_start + j)) ++bad;
      }
    }
    CHECK(bad == 0);
  }
}
