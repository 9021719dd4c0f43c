#pragma once

#include <vector>

#include "roulette/bigint.hpp"

namespace roulette {

// Polynomials as coefficient vectors, constant term first.
using Poly = std::vector<Rational>;

Poly poly_trim(Poly p);
long poly_degree(const Poly& p);  // -1 for the zero polynomial
Poly poly_derivative(const Poly& p);
// Remainder of a by b (b nonzero).
Poly poly_rem(const Poly& a, const Poly& b);

// Number of distinct real roots via the canonical Sturm sequence
// p, p', -rem(...), evaluated at -inf and +inf.
long sturm_distinct_real_roots(const Poly& p);

}  // namespace roulette
