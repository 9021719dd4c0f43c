#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "roulette/bigint.hpp"

namespace roulette {

// One realization of the shared randomness driving all coupled chains:
// a stream U_1, U_2, ... of uniforms on (0,1] (stored as 64-bit integers,
// compared exactly against rational thresholds), plus victim choices
// V_{A,i} realized as a pure function of (seed, copy, canonical set, i).
// Identical (A,i) pairs therefore always yield identical victims, across
// chains and across calls.
class CouplingRealization {
 public:
  CouplingRealization(uint64_t seed, int64_t copy = 0);

  uint64_t seed() const { return seed_; }
  int64_t copy() const { return copy_; }

  // U_j for j >= 1, as an integer u with U = (u+1)/2^64.
  uint64_t u_int(long j);

  // Exact test U_j <= num/den for 0 <= num, 0 < den.
  bool u_leq(long j, int64_t num, int64_t den);

  // Uniform draw from {0, ..., size-1}, keyed by (i, set_hash); unbiased by
  // rejection.
  uint64_t victim_rank(long i, uint64_t set_hash_lo, uint64_t set_hash_hi, uint64_t size);

 private:
  uint64_t seed_;
  int64_t copy_;
  std::vector<uint64_t> u_;  // lazily extended; u_[j-1] = U_j
};

// Terminal values of one coupled shooting round from n, plus optional
// per-step traces (index i = 0..n).
struct RoundOutcome {
  long n = 0;
  long s = 0;
  long y = 0;
  long z = 0;
  std::vector<long> s_steps, y_steps, z_steps;  // filled when traced
};

RoundOutcome simulate_round(CouplingRealization& real, long n, bool trace = false);

// Outcomes for every n in [n_lo, n_hi] under the same realization.
std::vector<RoundOutcome> simulate_round_sweep(CouplingRealization& real, long n_lo,
                                               long n_hi, bool trace = false);

// Coupled multi-round processes: round i+1 of the chain started at n uses
// the (k_n - i)-th copy of the one-round coupling.  States 0 and 1 absorb.
class MultiRoundPlan {
 public:
  explicit MultiRoundPlan(uint64_t seed,
                          std::function<int64_t(long)> copy_index_of_start =
                              [](long) { return 0; });

  CouplingRealization& copy(int64_t index);
  int64_t copy_index_of_start(long n) const { return k_of_(n); }
  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  std::function<int64_t(long)> k_of_;
  std::map<int64_t, CouplingRealization> copies_;
};

// Trajectory X_0 = start, X_{i+1} = S^{(k_start - i)}_{X_i}, until absorption
// at 0/1 or max_rounds steps.
std::vector<long> simulate_multiround(MultiRoundPlan& plan, long start, long max_rounds);

// Pathwise invariant audit over independent realizations of the sweep
// n = n_lo..n_hi: per step, y <= s <= z <= y+1, and across consecutive n,
// y^n_i <= y^{n+1}_{i+1} <= y^n_i + 1 (same for z).  Returns the number of
// violated comparisons (0 unless the construction is broken).
long count_sweep_violations(uint64_t seed, long realizations, long n_lo, long n_hi,
                            unsigned threads = 1);

// Monte Carlo estimate of P(S_a = S_b) under the coupling, with an exact
// binomial 3-sigma radius at the reference bound exp(-7(b-a)).
struct CollisionReport {
  long a = 0, b = 0;
  long trials = 0;
  long successes = 0;
  Rational frequency;
  Rational bound_lo;      // lower end of the exp(-7(b-a)) enclosure
  Rational three_sigma;   // 3 sqrt(bound(1-bound)/trials), outward
  bool pass = false;      // frequency >= bound_lo - three_sigma
};

CollisionReport collision_experiment(long a, long b, long trials, uint64_t seed,
                                     unsigned threads = 1);

}  // namespace roulette
