#pragma once

#include <vector>

#include "roulette/bigint.hpp"
#include "roulette/pmf.hpp"

namespace roulette {

// Integer m standing for the certified one-sided bound m/scale.
struct ScaledProb {
  Integer num;
  Integer scale;
  Rational as_rational() const { return Rational(num) / Rational(scale); }
};

enum class Tail { at_least, at_most };

// t^n_{k,r} = C(n,k) C(n-k,r) (n-k-r)^(k+r) (n-k-r-1)^(n-k-r), the integer
// term of the survivor-count inclusion-exclusion.  Terms with n-k-r <= 1
// vanish, which truncates the alternating sum naturally.
Integer truncated_term(long n, long k, long r);

// Table of W[a] = a^(row-a) * (a-1)^a for a = 2..top.  With a = n-k-r these
// are the power factors of t^n_{k,r}: t = C(n,k) C(n-k,r) W[n-k-r].
// Advancing the row multiplies every entry by its a, which is far cheaper
// than fresh exponentiations during a sweep over n.  ensure() extends the
// table single-threaded; at()/log2_at() are read-only afterwards, so
// concurrent row scans are race-free.
class OccupancyPowers {
 public:
  explicit OccupancyPowers(long row) : row_(row) {}

  long row() const { return row_; }
  void advance_row(unsigned threads = 1);
  void ensure(long a_top);
  const Integer& at(long a) const { return entries_[a - 2]; }
  double log2_at(long a) const { return log2_[a - 2]; }

 private:
  long row_;
  std::vector<Integer> entries_;  // entries_[i] = W[i+2]
  std::vector<double> log2_;
};

// Exact pmf of the one-round survivor count S_n, over denominator (n-1)^n.
Pmf survivor_pmf(long n);

// Certified scaled lower bound P_{n,k} <= scale * P(S_n = k), with
// P(S_n = k) - P_{n,k}/scale < 2/scale: the alternating sum is truncated at
// the first even index whose term falls below (n-1)^n/scale, then floored
// onto the scale grid.
ScaledProb survivor_pmf_lower(long n, long k, const Integer& scale);

// Same computation against a shared power table positioned at row n.
// Returns the integer numerator; scratch avoids reallocating temporaries in
// the inner loop of a sweep.
struct LowerScaledScratch {
  Integer acc, cmr, u, bk, cnk;
};
Integer survivor_pmf_lower_core(long n, long k, const Integer& scale,
                                const Integer& denom, const Integer& thresh,
                                double log2_thresh, OccupancyPowers& powers,
                                LowerScaledScratch& scratch);

// Exact pmf of the number of empty boxes after throwing `balls` balls
// uniformly into `boxes` boxes, over denominator boxes^balls.
Pmf empty_boxes_pmf(long balls, long boxes);

// Occupancy comparisons for the shooting round: Y_n counts empties of n-1
// balls in n-1 boxes; Z_n is 1 + empties of n balls in n-1 boxes.
Pmf y_pmf(long n);
Pmf z_pmf(long n);

// Exact tails of Y_n from the integer closed forms (all summands are
// integers over (n-1)^(n-1)).  at_least requires k >= 1.
Rational y_tail(long n, long k, Tail dir, unsigned threads = 1);

// Stirling numbers of the second kind.
Integer stirling2(long i, long k);

// Numerator coefficients of E z^{Y_n} over (n-1)^(n-1), built from the
// binomial moments E C(Y_n,k) = C(n-1,k)((n-k-1)/(n-1))^(n-1); equal to the
// occupancy counts (n-1)^(n-1) P(Y_n = j).
std::vector<Integer> y_generating_numerator(long n);

// Decides whether that polynomial has all roots real, by an exact Sturm
// sign count.  True iff #distinct real roots == degree.
bool y_generating_poly_real_rooted(long n, long n_small = 12);

}  // namespace roulette
