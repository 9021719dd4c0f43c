#pragma once

#include <stdexcept>
#include <string>

#include "roulette/bigint.hpp"

namespace roulette {

struct enclosure_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an interval endpoint straddles an integer at the maximum
// working precision, so a floor/ceil cannot be certified.
struct undecidable_rounding_error : enclosure_error {
  using enclosure_error::enclosure_error;
};

// A pair of exact rationals [lo, hi] certified to contain a real value.
// All arithmetic here is exact; widening happens only where a transcendental
// value is bracketed or where coarsen() is called to cap operand size.
class Enclosure {
 public:
  Enclosure() : lo_(0), hi_(0) {}
  explicit Enclosure(const Rational& exact) : lo_(exact), hi_(exact) {}
  Enclosure(Rational lo, Rational hi);

  static Enclosure of_int(long v) { return Enclosure(Rational(v)); }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / 2; }

  bool contains(const Rational& q) const { return lo_ <= q && q <= hi_; }
  bool contains(const Enclosure& e) const { return lo_ <= e.lo_ && e.hi_ <= hi_; }
  bool strictly_positive() const { return lo_ > 0; }

  Enclosure operator+(const Enclosure& o) const { return {lo_ + o.lo_, hi_ + o.hi_}; }
  Enclosure operator-(const Enclosure& o) const { return {lo_ - o.hi_, hi_ - o.lo_}; }
  Enclosure operator*(const Enclosure& o) const;
  Enclosure operator/(const Enclosure& o) const;  // o must not contain 0
  Enclosure operator-() const { return {-hi_, -lo_}; }

  Enclosure operator+(const Rational& q) const { return {lo_ + q, hi_ + q}; }
  Enclosure operator-(const Rational& q) const { return {lo_ - q, hi_ - q}; }
  Enclosure operator*(const Rational& q) const;

  // Integer power; base must be > 0 for negative k.
  Enclosure pow(long k) const;

  // Outward rounding to denominators 2^bits, bounding operand growth.
  Enclosure coarsen(unsigned bits = 256) const;

  // Intersection; both operands must bracket the same value.
  Enclosure intersect(const Enclosure& o) const;

  // True if this enclosure lies entirely below/above the other.
  bool provably_less(const Enclosure& o) const { return hi_ < o.lo_; }
  bool provably_leq(const Rational& q) const { return hi_ <= q; }
  bool provably_geq(const Rational& q) const { return lo_ >= q; }

  std::string str(int digits = 15) const;

 private:
  Rational lo_, hi_;
};

// e = 2.71828..., to width <= target.  Cached and refined on demand;
// refinements are nested.
Enclosure e_enclosure(const Rational& target_width);

// exp(x) for rational x, width <= target.
Enclosure exp_enclosure(const Rational& x, const Rational& target_width);

// exp over an interval (monotone).
Enclosure exp_enclosure(const Enclosure& x, const Rational& target_width);

// Natural log of a rational / an interval with lo > 0.
Enclosure log_enclosure(const Rational& x, const Rational& target_width);
Enclosure log_enclosure(const Enclosure& x, const Rational& target_width);

// sqrt / k-th root of a nonnegative rational or interval, width <= target.
Enclosure sqrt_enclosure(const Rational& x, const Rational& target_width);
Enclosure sqrt_enclosure(const Enclosure& x, const Rational& target_width);
Enclosure root_enclosure(const Rational& x, unsigned long k, const Rational& target_width);
Enclosure root_enclosure(const Enclosure& x, unsigned long k, const Rational& target_width);

// Certified floor of the enclosed value. Escalation is the caller's business;
// throws undecidable_rounding_error if floor(lo) != floor(hi).
Integer certified_floor(const Enclosure& e);
Integer certified_ceil(const Enclosure& e);

// Convenience: 10^-d as a rational width target.
Rational width_target(int d);

}  // namespace roulette
