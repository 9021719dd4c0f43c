#pragma once

#include <vector>

#include "roulette/enclosure.hpp"

namespace roulette {

enum class Side { lower_tail, upper_tail };

// Parameters of a sum W of n independent Bernoulli variables:
// p = E W / n, u = deviation from the mean.
struct BernoulliSumParams {
  long n;
  Rational p;  // in [0,1]
  Rational u;  // >= 0
};

// exp(-u^2 / (2(np(1-p) -/+ u(1-2p)/3))): the Bernoulli-sum tail bound
//   P(W <= EW - u), P(W >= EW + u).
// Requires the denominator to be positive; otherwise the bound does not
// apply and a domain error is raised.
Enclosure janson_bound(const BernoulliSumParams& params, Side side,
                       const Rational& target_width);

// Specialization to the empty-box count Y_n (n >= 4):
//   P(Y_n <= (n-5/3)/e - u) <= exp(-e^2 u^2 / (2(n-1)(e-1)))
//   P(Y_n >= (n-3/2)/e + u) <= exp(-e^2 u^2 / (2((n-1)(e-1) + ue(e-2)/3)))
Enclosure y_tail_bound(long n, const Rational& u, Side side,
                       const Rational& target_width);

// E Y_n = (n-1)(1 - 1/(n-1))^(n-1), exactly.
Rational expected_empty(long n);

// Checks (1-u)^(1/u) <= (1-u/2)/e and >= (1-u/2-u^2/2)/e at each grid point
// in (0,1).  Both reduce to comparisons of e^p against exact rationals when
// u = p/q, so no exp/log evaluation is involved.
bool u_inequality_check(const std::vector<Rational>& u_grid);

}  // namespace roulette
