#include "roulette/tail_bounds.hpp"

#include <stdexcept>

namespace roulette {

Enclosure janson_bound(const BernoulliSumParams& params, Side side,
                       const Rational& target_width) {
  if (params.p < 0 || params.p > 1) throw std::domain_error("janson_bound: p outside [0,1]");
  if (params.u < 0) throw std::domain_error("janson_bound: u < 0");
  Rational npq = Rational(params.n) * params.p * (Rational(1) - params.p);
  Rational skew = params.u * (Rational(1) - 2 * params.p) / 3;
  Rational den = side == Side::lower_tail ? Rational(npq - skew) : Rational(npq + skew);
  if (den <= 0) throw std::domain_error("janson_bound: nonpositive denominator, bound inapplicable");
  Rational arg = -(params.u * params.u) / (2 * den);
  return exp_enclosure(arg, target_width);
}

Enclosure y_tail_bound(long n, const Rational& u, Side side,
                       const Rational& target_width) {
  if (n < 4) throw std::domain_error("y_tail_bound: n < 4");
  if (u < 0) throw std::domain_error("y_tail_bound: u < 0");
  Enclosure e = e_enclosure(target_width / 1000);
  Enclosure e2u2 = e.pow(2) * (u * u);
  Enclosure den = (e - Rational(1)) * Rational(n - 1);
  if (side == Side::upper_tail)
    den = den + e * (e - Rational(2)) * (u / 3);
  Enclosure arg = -(e2u2 / (den * Rational(2)));
  return exp_enclosure(arg, target_width);
}

Rational expected_empty(long n) {
  if (n < 2) throw std::domain_error("expected_empty: n < 2");
  // (n-1)(1 - 1/(n-1))^(n-1) = (n-2)^(n-1) / (n-1)^(n-2)
  return Rational(pow_ui(n - 2, n - 1)) / Rational(pow_ui(n - 1, n - 2));
}

namespace {

// (1-u)^(1/u) <= rhs with u = p/q in (0,1) and rhs = r/e, r rational > 0:
//   (1-u)^q <= (r/e)^p  <=>  e^p (1-u)^q <= r^p.
// Decided by refining the e enclosure.
bool power_leq(const Rational& u, const Rational& rhs_num, bool want_leq) {
  long p = static_cast<long>(u.get_num().get_si());
  long q = static_cast<long>(u.get_den().get_si());
  Rational base = Rational(1) - u;
  Rational lhs_rat = pow_rat(base, q);
  Rational rhs_rat = pow_rat(rhs_num, p);
  for (int digits = 25; digits <= 400; digits *= 2) {
    Enclosure ep = e_enclosure(width_target(digits)).pow(p);
    Enclosure lhs = ep * lhs_rat;
    if (want_leq && lhs.hi() <= rhs_rat) return true;
    if (!want_leq && lhs.lo() >= rhs_rat) return true;
    if (want_leq && lhs.lo() > rhs_rat) return false;
    if (!want_leq && lhs.hi() < rhs_rat) return false;
  }
  throw enclosure_error("u_inequality_check: comparison undecided at max precision");
}

}  // namespace

bool u_inequality_check(const std::vector<Rational>& u_grid) {
  for (const Rational& u : u_grid) {
    if (u <= 0 || u >= 1) throw std::domain_error("u_inequality_check: grid point outside (0,1)");
    if (!u.get_num().fits_slong_p() || !u.get_den().fits_slong_p())
      throw std::domain_error("u_inequality_check: grid point too large");
    Rational upper = Rational(1) - u / 2;
    Rational lower = Rational(1) - u / 2 - u * u / 2;
    if (!power_leq(u, upper, true)) return false;
    if (lower > 0 && !power_leq(u, lower, false)) return false;
    // lower <= 0 makes the second inequality vacuous
  }
  return true;
}

}  // namespace roulette
