#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "roulette/coupling.hpp"
#include "roulette/enclosure.hpp"
#include "roulette/survivor.hpp"

using namespace roulette;

TEST_CASE("n=2 is forced: both shoot, one box, Z stuck at 1") {
  for (uint64_t seed : {0ULL, 1ULL, 42ULL, 12345ULL}) {
    CouplingRealization real(seed);
    RoundOutcome out = simulate_round(real, 2);
    CHECK(out.s == 0);
    CHECK(out.y == 0);
    CHECK(out.z == 1);
  }
  CouplingRealization real(9);
  CHECK_THROWS_AS(simulate_round(real, 1), std::domain_error);
}

TEST_CASE("pathwise sandwich and step orderings hold over sweeps") {
  CHECK(count_sweep_violations(/*seed=*/2024, /*realizations=*/300, 2, 80, 2) == 0);
}

TEST_CASE("interval-visit event: y(a) >= alpha and y(b) <= beta-1 pin all s(n)") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    CouplingRealization real(seed);
    auto outcomes = simulate_round_sweep(real, 30, 60);
    long alpha = outcomes.front().y;
    long beta = outcomes.back().y + 1;
    for (const auto& o : outcomes) {
      CHECK(o.s >= alpha);
      CHECK(o.s <= beta);
    }
  }
}

TEST_CASE("same seed reproduces traces; thread count does not change results") {
  CouplingRealization a(77), b(77);
  auto ta = simulate_round_sweep(a, 2, 40, true);
  auto tb = simulate_round_sweep(b, 2, 40, true);
  for (size_t i = 0; i < ta.size(); ++i) {
    CHECK(ta[i].s_steps == tb[i].s_steps);
    CHECK(ta[i].y_steps == tb[i].y_steps);
    CHECK(ta[i].z_steps == tb[i].z_steps);
  }
  CollisionReport r1 = collision_experiment(40, 41, 4000, 5, 1);
  CollisionReport r2 = collision_experiment(40, 41, 4000, 5, 2);
  CHECK(r1.successes == r2.successes);
}

TEST_CASE("one-round empirical distributions track the exact pmfs") {
  const long trials = 200000;
  std::map<long, long> s3, y6, z6;
  for (long t = 0; t < trials; ++t) {
    CouplingRealization real(0x5eed0000 + t);
    s3[simulate_round(real, 3).s]++;
    RoundOutcome o6 = simulate_round(real, 6);
    y6[o6.y]++;
    z6[o6.z]++;
  }
  CHECK(oracles::tv_distance(s3, trials, survivor_pmf(3)) < Rational(1, 100));
  CHECK(oracles::tv_distance(y6, trials, y_pmf(6)) < Rational(1, 100));
  CHECK(oracles::tv_distance(z6, trials, z_pmf(6)) < Rational(1, 100));
}

TEST_CASE("multiround absorption and coupled continuation") {
  MultiRoundPlan plan(3);
  CHECK(simulate_multiround(plan, 0, 10) == std::vector<long>{0});
  CHECK(simulate_multiround(plan, 1, 10) == std::vector<long>{1});

  // equal values in the same copy stream continue identically
  bool found_merge = false;
  for (uint64_t seed = 0; seed < 20 && !found_merge; ++seed) {
    MultiRoundPlan p(seed);
    auto ta = simulate_multiround(p, 60, 40);
    auto tb = simulate_multiround(p, 61, 40);
    for (size_t i = 1; i < std::min(ta.size(), tb.size()); ++i) {
      if (ta[i] == tb[i]) {
        found_merge = true;
        for (size_t j = i; j < std::min(ta.size(), tb.size()); ++j) CHECK(ta[j] == tb[j]);
        break;
      }
    }
  }
  CHECK(found_merge);

  // trajectories are reproducible per copy index
  MultiRoundPlan p1(11), p2(11);
  CHECK(simulate_multiround(p1, 500, 64) == simulate_multiround(p2, 500, 64));
}

TEST_CASE("collision experiment report") {
  CollisionReport rep = collision_experiment(40, 40, 500, 1);
  CHECK(rep.successes == 500);  // identical chains collide surely
  CHECK(rep.frequency == 1);

  CollisionReport r = collision_experiment(40, 41, 3000, 9, 2);
  CHECK(r.pass);
  CHECK(r.bound_lo > 0);
  CHECK(r.three_sigma > 0);
  // exp(-7) = 0.000911881965...
  CHECK(r.bound_lo < frac(912, 1000000));
  CHECK(r.bound_lo > Rational(911, 1000000));

  CHECK_THROWS_AS(collision_experiment(40, 51, 10, 0), std::domain_error);
  CHECK_THROWS_AS(collision_experiment(1, 2, 10, 0), std::domain_error);
}

TEST_CASE("shared U stream and pure victim function give cross-chain consistency") {
  // simulating the same n twice in one realization is bit-identical
  CouplingRealization real(123);
  RoundOutcome first = simulate_round(real, 17, true);
  RoundOutcome second = simulate_round(real, 17, true);
  CHECK(first.s_steps == second.s_steps);
}
