#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace roulette {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer pow_ui(unsigned long base, unsigned long exp) {
  // 0^0 = 1 by convention, so boundary terms of the occupancy sums vanish
  // or survive exactly as the full inclusion-exclusion requires.
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

inline Integer pow_int(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// floor(a/b) for b > 0
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// ceil(a/b) for b > 0
inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer isqrt(const Integer& a) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

// floor of the k-th root
inline Integer iroot(const Integer& a, unsigned long k) {
  Integer r;
  mpz_root(r.get_mpz_t(), a.get_mpz_t(), k);
  return r;
}

inline Integer floor_rat(const Rational& q) {
  return floor_div(q.get_num(), q.get_den());
}

inline Integer ceil_rat(const Rational& q) {
  return ceil_div(q.get_num(), q.get_den());
}

inline Rational pow_rat(const Rational& base, long exp) {
  Rational r;
  if (exp >= 0) {
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), exp);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), exp);
  } else {
    if (base == 0) throw std::domain_error("pow_rat: zero base, negative exponent");
    mpz_pow_ui(r.get_num_mpz_t(), base.get_den().get_mpz_t(), -exp);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_num().get_mpz_t(), -exp);
  }
  r.canonicalize();
  return r;
}

// mpq_class(a, b) does not canonicalize; GMP comparisons assume canonical
// form, so every literal fraction goes through here.
inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational frac(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

enum class Round { down, up };

// Exact decimal rendering of a rational with a stated rounding direction.
// digits = number of places after the decimal point.
std::string decimal_string(const Rational& q, int digits, Round dir);

// Same, but also reports whether the rendering is exact ("exact") or the
// direction used ("down"/"up").
std::string decimal_string_annotated(const Rational& q, int digits, Round dir);

}  // namespace roulette
