#pragma once

#include <map>
#include <ostream>
#include <vector>

#include "roulette/bigint.hpp"

namespace roulette {

// Finite pmf over integer outcomes.  Masses are exact rationals and must sum
// to exactly 1; entries with zero mass are dropped from the support.
class Pmf {
 public:
  Pmf() = default;
  explicit Pmf(std::map<long, Rational> mass);

  // Numerators over one common denominator; zero numerators are dropped.
  static Pmf from_numerators(const std::vector<std::pair<long, Integer>>& nums,
                             const Integer& denom);

  const std::map<long, Rational>& mass() const { return mass_; }
  std::vector<long> support() const;
  Rational at(long outcome) const;  // 0 for outcomes off the support
  long min_outcome() const;
  long max_outcome() const;

  Rational tail_at_least(long k) const;
  Rational tail_at_most(long k) const;
  Rational mean() const;

  // Pmf of outcome + shift.
  Pmf shifted(long shift) const;

  // CSV with columns outcome,numerator,denominator.
  void write_csv(std::ostream& os) const;
  // CSV with columns outcome,decimal,rounding at the given precision.
  void write_decimal_csv(std::ostream& os, int digits, Round dir) const;

 private:
  std::map<long, Rational> mass_;
  void validate() const;
};

}  // namespace roulette
