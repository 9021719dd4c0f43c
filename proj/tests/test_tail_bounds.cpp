#include <doctest.h>

#include "roulette/survivor.hpp"
#include "roulette/tail_bounds.hpp"

using namespace roulette;

namespace {

// Largest integer certainly <= the enclosed value (conservative for tails).
long floor_of(const Enclosure& e) { return static_cast<long>(certified_floor(e).get_si()); }
long ceil_of(const Enclosure& e) { return static_cast<long>(certified_ceil(e).get_si()); }

}  // namespace

TEST_CASE("bernoulli-sum bound: u=0, symmetry, inapplicable denominator") {
  BernoulliSumParams p0{10, Rational(1, 3), Rational(0)};
  Enclosure one = janson_bound(p0, Side::lower_tail, width_target(20));
  CHECK(one.lo() == 1);
  CHECK(one.hi() == 1);

  BernoulliSumParams p{25, Rational(2, 7), Rational(3, 2)};
  BernoulliSumParams mirror{25, Rational(5, 7), Rational(3, 2)};
  Enclosure a = janson_bound(p, Side::lower_tail, width_target(25));
  Enclosure b = janson_bound(mirror, Side::upper_tail, width_target(25));
  CHECK(a.lo() == b.lo());
  CHECK(a.hi() == b.hi());
  CHECK(a.hi() < 1);

  BernoulliSumParams degenerate{10, Rational(0), Rational(3)};
  CHECK_THROWS_AS(janson_bound(degenerate, Side::lower_tail, width_target(10)),
                  std::domain_error);
}

TEST_CASE("bernoulli-sum bound dominates an exact occupancy tail") {
  // Y_10 is a sum of 8 independent Bernoullis with mean E Y_10
  long n = 10;
  Rational ey = expected_empty(n);
  Rational p = ey / Rational(n - 2);
  Rational u = ey - 1;  // threshold E Y - u = 1
  Enclosure bound = janson_bound({n - 2, p, u}, Side::lower_tail, width_target(25));
  CHECK(y_tail(n, 1, Tail::at_most) <= bound.hi());
}

TEST_CASE("y tail bound: u=0 and domination examples") {
  Enclosure one = y_tail_bound(10, Rational(0), Side::lower_tail, width_target(20));
  CHECK(one.contains(Rational(1)));
  CHECK_THROWS_AS(y_tail_bound(3, Rational(1), Side::lower_tail, width_target(10)),
                  std::domain_error);
  CHECK_THROWS_AS(y_tail_bound(10, Rational(-1), Side::lower_tail, width_target(10)),
                  std::domain_error);

  Enclosure e = e_enclosure(width_target(30));

  {
    long n = 10;
    Rational u = 2;
    Enclosure bound = y_tail_bound(n, u, Side::lower_tail, width_target(25));
    CHECK(bound.hi() < 1);
    Enclosure threshold = (Enclosure(Rational(n) - Rational(5, 3)) / e) - Rational(u);
    Rational exact = y_tail(n, floor_of(threshold), Tail::at_most);
    CHECK(exact <= bound.hi());
  }
  {
    long n = 50;
    Rational u = 5;
    Enclosure bound = y_tail_bound(n, u, Side::upper_tail, width_target(25));
    Enclosure threshold = (Enclosure(Rational(n) - Rational(3, 2)) / e) + Rational(u);
    Rational exact = y_tail(n, ceil_of(threshold), Tail::at_least);
    CHECK(exact <= bound.hi());
  }
}

TEST_CASE("expected empty boxes: exact values and sandwich") {
  CHECK(expected_empty(2) == 0);
  CHECK(expected_empty(4) == Rational(8, 9));
  CHECK_THROWS_AS(expected_empty(1), std::domain_error);

  Enclosure e = e_enclosure(width_target(30));
  for (long n = 4; n <= 200; ++n) {
    Rational ey = expected_empty(n);
    // (n-5/3)/e <= E Y_n  <=>  n-5/3 <= e * E Y_n
    CHECK(Rational(n) - Rational(5, 3) <= e.lo() * ey);
    // E Y_n <= (n-3/2)/e  <=>  e * E Y_n <= n-3/2
    CHECK(e.hi() * ey <= Rational(n) - Rational(3, 2));
  }
  // mean of the occupancy pmf agrees
  for (long n : {3L, 7L, 12L}) CHECK(y_pmf(n).mean() == expected_empty(n));
}

TEST_CASE("power-mean inequalities on the u grid") {
  CHECK(u_inequality_check({}));
  CHECK(u_inequality_check({Rational(1, 2)}));
  std::vector<Rational> grid;
  for (long n = 4; n <= 100; ++n) grid.emplace_back(1, n - 1);
  grid.emplace_back(9, 10);
  grid.emplace_back(1, 10);
  CHECK(u_inequality_check(grid));
  CHECK_THROWS_AS(u_inequality_check({Rational(1)}), std::domain_error);
  CHECK_THROWS_AS(u_inequality_check({Rational(0)}), std::domain_error);
  CHECK_THROWS_AS(u_inequality_check({Rational(3, 2)}), std::domain_error);
}
