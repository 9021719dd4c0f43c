#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "roulette/survivor.hpp"

using namespace roulette;

TEST_CASE("survivor pmf matches hand values and the enumeration oracle") {
  CHECK(survivor_pmf(2).at(0) == 1);
  Pmf p3 = survivor_pmf(3);
  CHECK(p3.at(0) == Rational(1, 4));
  CHECK(p3.at(1) == Rational(3, 4));
  Pmf p4 = survivor_pmf(4);
  CHECK(p4.at(0) == frac(9, 81));
  CHECK(p4.at(1) == frac(48, 81));
  CHECK(p4.at(2) == frac(24, 81));
  for (long n = 2; n <= 7; ++n) {
    Pmf lib = survivor_pmf(n);
    Pmf brute = oracles::brute_survivor_pmf(n);
    CHECK(lib.mass() == brute.mass());
  }
  CHECK_THROWS_AS(survivor_pmf(1), std::domain_error);
}

TEST_CASE("survivor pmf support stays inside {0..n-2}") {
  for (long n = 2; n <= 40; ++n) {
    Pmf p = survivor_pmf(n);
    CHECK(p.min_outcome() >= 0);
    CHECK(p.max_outcome() <= n - 2);
    CHECK(p.tail_at_least(p.min_outcome()) == 1);  // masses sum to 1
  }
}

TEST_CASE("truncated terms satisfy their defining product") {
  for (long n : {2L, 3L, 5L, 9L, 17L}) {
    for (long k = 0; k <= n - 2; k += 2) {
      for (long r = 0; r <= n - k; ++r) {
        long a = n - k - r;
        Integer expect = 0;
        if (a >= 2) {
          expect = binomial(n, k) * binomial(n - k, r) * pow_ui(a, k + r) * pow_ui(a - 1, a);
        } else if (a >= 0) {
          expect = 0;  // 0^0 = 1 convention still zeroes these via the other factor
        }
        CHECK(truncated_term(n, k, r) == expect);
      }
    }
  }
}

TEST_CASE("scaled lower bounds: examples and certified gap") {
  Integer scale = pow_ui(10, 10);
  CHECK(survivor_pmf_lower(3, 0, scale).num == 2500000000L);
  CHECK(survivor_pmf_lower(3, 1, scale).num == 7500000000L);
  CHECK_THROWS_AS(survivor_pmf_lower(3, 2, scale), std::domain_error);
  CHECK_THROWS_AS(survivor_pmf_lower(1, 0, scale), std::domain_error);

  for (long n = 2; n <= 40; ++n) {
    Pmf exact = survivor_pmf(n);
    for (long k = 0; k <= n - 2; ++k) {
      ScaledProb low = survivor_pmf_lower(n, k, scale);
      CHECK(low.num >= 0);
      Rational lo = low.as_rational();
      Rational gap = exact.at(k) - lo;
      CHECK(gap >= 0);
      CHECK(gap < Rational(2) / Rational(scale));
    }
  }
}

TEST_CASE("empty boxes pmf: examples, enumeration oracle, edge cases") {
  CHECK(empty_boxes_pmf(1, 1).at(0) == 1);
  Pmf p22 = empty_boxes_pmf(2, 2);
  CHECK(p22.at(0) == Rational(1, 2));
  CHECK(p22.at(1) == Rational(1, 2));
  Pmf p32 = empty_boxes_pmf(3, 2);
  CHECK(p32.at(0) == Rational(3, 4));
  CHECK(p32.at(1) == Rational(1, 4));
  CHECK(empty_boxes_pmf(0, 5).at(5) == 1);
  CHECK_THROWS_AS(empty_boxes_pmf(3, 0), std::domain_error);

  for (auto [balls, boxes] : {std::pair<long, long>{4, 3}, {7, 4}, {10, 3}, {5, 5}}) {
    CHECK(empty_boxes_pmf(balls, boxes).mass() ==
          oracles::brute_empty_boxes_pmf(balls, boxes).mass());
  }
}

TEST_CASE("occupancy pmf agrees with the Stirling-number formula") {
  for (long n = 1; n <= 15; ++n) {
    for (long i = 0; i <= n; ++i) {
      Pmf pmf = empty_boxes_pmf(i, n);
      Integer denom = pow_ui(n, i);
      for (long k = 0; k <= n; ++k) {
        Rational expect = Rational(factorial(n) / factorial(n - k) * stirling2(i, k)) /
                          Rational(denom);
        CHECK(pmf.at(n - k) == expect);
      }
    }
  }
}

TEST_CASE("stirling2 special values") {
  for (long i = 1; i <= 12; ++i) CHECK(stirling2(i, 1) == 1);
  CHECK(stirling2(3, 2) == 3);
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(5, 0) == 0);
  CHECK(stirling2(4, 7) == 0);
}

TEST_CASE("y tails: closed forms vs pmf sums") {
  CHECK(y_tail(3, 1, Tail::at_least) == Rational(1, 2));
  CHECK(y_tail(3, 1, Tail::at_most) == 1);
  CHECK(y_tail(4, 1, Tail::at_least) == Rational(7, 9));
  CHECK_THROWS_AS(y_tail(5, 0, Tail::at_least), std::domain_error);
  CHECK_THROWS_AS(y_tail(5, -1, Tail::at_most), std::domain_error);

  for (long n = 2; n <= 40; n += 3) {
    Pmf y = y_pmf(n);
    for (long k = 0; k <= n; ++k) {
      if (k >= 1) CHECK(y_tail(n, k, Tail::at_least) == y.tail_at_least(k));
      CHECK(y_tail(n, k, Tail::at_most) == y.tail_at_most(k));
    }
  }
}

TEST_CASE("y tail chunked evaluation matches single-threaded") {
  for (long k : {40L, 120L, 260L}) {
    CHECK(y_tail(400, k, Tail::at_least, 2) == y_tail(400, k, Tail::at_least, 1));
    CHECK(y_tail(400, k, Tail::at_most, 2) == y_tail(400, k, Tail::at_most, 1));
  }
}

TEST_CASE("z pmf is the shifted occupancy count") {
  Pmf z = z_pmf(5);
  CHECK(z.min_outcome() >= 1);
  CHECK(z.mass() == empty_boxes_pmf(5, 4).shifted(1).mass());
}

TEST_CASE("generating polynomial equals the occupancy numerators") {
  for (long n = 2; n <= 10; ++n) {
    std::vector<Integer> coef = y_generating_numerator(n);
    Pmf y = y_pmf(n);
    Integer denom = pow_ui(n - 1, n - 1);
    for (long j = 0; j < static_cast<long>(coef.size()); ++j)
      CHECK(Rational(coef[j]) / Rational(denom) == y.at(j));
  }
}

TEST_CASE("pmf csv exports carry exact fractions and rounding tags") {
  std::ostringstream exact_csv;
  survivor_pmf(4).write_csv(exact_csv);
  CHECK(exact_csv.str() ==
        "outcome,numerator,denominator\n"
        "0,1,9\n"
        "1,16,27\n"
        "2,8,27\n");
  std::ostringstream dec_csv;
  survivor_pmf(3).write_decimal_csv(dec_csv, 10, Round::down);
  CHECK(dec_csv.str() ==
        "outcome,decimal,rounding\n"
        "0,0.2500000000,exact\n"
        "1,0.7500000000,exact\n");
  std::ostringstream rounded;
  survivor_pmf(4).write_decimal_csv(rounded, 4, Round::down);
  CHECK(rounded.str().find("0,0.1111,down") != std::string::npos);
}

TEST_CASE("real-rootedness by exact Sturm count") {
  for (long n = 3; n <= 12; ++n) CHECK(y_generating_poly_real_rooted(n));
  CHECK_THROWS_AS(y_generating_poly_real_rooted(13), std::domain_error);
  CHECK_THROWS_AS(y_generating_poly_real_rooted(2), std::domain_error);
  CHECK(y_generating_poly_real_rooted(14, 20));
}
