#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "roulette/bounds.hpp"
#include "roulette/enclosure.hpp"

namespace roulette {

// s0 = sum_{i>=1} sqrt(i) e^{-i/2}: partial sum plus the tail majorant
// sqrt(i) <= e^{i/4}, giving tail <= e^{-(K+1)/4} / (1 - e^{-1/4}).
Enclosure s0_enclosure(const Rational& target_width = width_target(25));

// Start data for an interval sequence: [I0_minus, I0_plus] with
// 2 <= I0_minus, I0_plus < e*I0_minus (verified via the e enclosure),
// and a damping parameter gamma in (0,1].
struct IntervalSeqParams {
  Rational I0_minus;
  Rational I0_plus;
  Rational gamma;
};

struct IntervalSeq {
  IntervalSeqParams params;
  Enclosure s0;
  Enclosure c0;
  Enclosure c1;
  Enclosure c2;
  // integer intervals [floor(I_k^-), ceil(I_k^+)], k = 0..K
  std::vector<std::pair<Integer, Integer>> intervals;
  // enclosures of the real endpoints, same indexing
  std::vector<Enclosure> left_encl, right_encl;
};

// Builds I_k for k = 0..K:
//   I_k^- = I0_minus e^k (1 + c0 sqrt(e/I0_minus) sum_{i<=k} sqrt(i) e^{-i/2})
//   I_k^+ = I0_plus  e^k (1 - c0 sqrt(e/I0_plus)  sum_{i<=k} sqrt(i) e^{-i/2})
// with c0 = (sqrt(I0_plus) - sqrt(I0_minus)) gamma / (s0 sqrt(e)), and the
// escape-rate constants
//   c1 = (e c0^2/2) / ((e-1)(1 + c0 s0 sqrt(e/I0_minus)))
//   c2 = (e c0^2/2) / (e-1 - c0 (2e-1)/(3 sqrt(I0_plus))).
// Endpoint floors/ceilings are resolved from enclosures, escalating the
// working precision; an endpoint still straddling an integer at width
// 1e-60 raises undecidable_rounding_error.
IntervalSeq build_interval_seq(const IntervalSeqParams& params, long K);

// 1/(e^c1 - 1) + 1/(e^c2 - 1): bound on the probability that some chain
// started in any I_k ever leaves the prescribed interval schedule.
// Requires c1, c2 provably positive.
Enclosure lemma27_bound(const IntervalSeq& seq);

// Hill/valley schedule used by the non-convergence certificate.
inline constexpr std::array<std::pair<long, long>, 4> kHillIntervals{
    {{2479, 3151}, {6991, 8290}, {19425, 22086}, {53501, 59301}}};
inline constexpr std::array<std::pair<long, long>, 3> kValleyIntervals{
    {{4129, 5143}, {11553, 13623}, {31952, 36447}}};

// Exact sums over the consecutive-interval escape tails:
//   sum_k [ P(Y_{H_k^-} <= H_{k-1}^- - 1) + P(Y_{H_k^+} >= H_{k-1}^+) ]
// for the hills (k = 1..3) and valleys (k = 1..2).
std::pair<Rational, Rational> hv_tail_sums(unsigned threads = 1);

struct CertificateCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CertificateReport {
  // inputs
  std::array<std::pair<long, long>, 4> hills = kHillIntervals;
  std::array<std::pair<long, long>, 3> valleys = kValleyIntervals;
  // intermediate quantities, all surfaced for audit
  Rational hill_tail_sum, valley_tail_sum;
  Enclosure lemma27_hill, lemma27_valley;
  Rational min_lower_h0, max_upper_v0;
  Rational escape_lower_h, escape_lower_v;  // 1 - lemma27_hi - tail_sum
  Rational final_lower, final_upper;
  std::vector<CertificateCheck> checks;
  bool ok = false;

  std::string failing() const;  // comma-joined names of failed checks
  void render(std::ostream& os) const;
  void write_csv(std::ostream& os) const;
};

// Combines the bounds table extrema over H_0/V_0 with the escape bounds to
// certify inf p_n >= 0.515428 over the hills and sup p_n <= 0.477449 over
// the valleys.  The table must cover n <= 5143.
CertificateReport nonconvergence_certificate(const BoundsTable& table,
                                             unsigned threads = 1);

// Interval schedule derived from a window on the log scale:
//   J_0 = [e^(x-3d), e^(x-3d) + (e^(x-3d))^(2/3)],
//   J_k = [e^(x+k-d), e^(x+k+d)]  (k >= 1),   x = k0 + w,
// together with the comparison sequence I_k(x) built with
// delta_x = (1/12)e^(-x/3) and gamma = 1/4.  Inclusion flags are reported,
// not asserted: they are expected to hold only for k0 large enough.
struct JIntervalsReport {
  long k0 = 0;
  Rational w, delta;
  std::vector<std::pair<Integer, Integer>> j;        // inward-resolved integers
  std::vector<std::pair<Integer, Integer>> i_of_x;   // outward-resolved integers
  std::vector<bool> j_in_i;    // k >= 1: J_k subset of I_k(x)
  bool i0_in_j0 = false;       // I_0(x) subset of J_0
};

JIntervalsReport j_intervals(long k0, const Rational& w, const Rational& delta, long K);

void write_intervals_csv(const std::vector<std::pair<Integer, Integer>>& intervals,
                         std::ostream& os);

}  // namespace roulette
