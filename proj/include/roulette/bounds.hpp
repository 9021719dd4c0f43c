#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "roulette/bigint.hpp"
#include "roulette/survivor.hpp"

namespace roulette {

struct cache_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Summation window [k1, k2] for the truncated recursion row n.  Sound as
// long as it contains [ceil(n/e - sqrt(5n)) v 0, floor(n/e + sqrt(5n)) ^ (n-2)];
// endpoints are widened outward from enclosures of n/e and sqrt(5n), which
// only adds nonnegative terms.
struct TruncationWindow {
  long k1 = 0;
  long k2 = 0;
};

TruncationWindow truncation_window(long n);

// Certified scaled lower bounds on p_n and q_n = 1 - p_n:
//   lower_p[n]/scale <= p_n,   lower_q[n]/scale <= 1 - p_n.
// Row 0 is (scale, 0), row 1 is (0, scale).
struct BoundsTable {
  Integer scale;
  std::vector<int64_t> lower_p;
  std::vector<int64_t> lower_q;

  long max_n() const { return static_cast<long>(lower_p.size()) - 1; }
  Rational lower(long n) const { return Rational(lower_p[n]) / Rational(scale); }
  Rational upper(long n) const { return Rational(1) - Rational(lower_q[n]) / Rational(scale); }
  Rational max_gap() const;  // max over n >= 2 of upper - lower
};

using ProgressFn = std::function<void(long n, long n_max)>;

BoundsTable run_bounds(long n_max, const Integer& scale, unsigned threads = 1,
                       const ProgressFn& progress = nullptr);

// Exact rational extinction probabilities from the untruncated recursion;
// the independent oracle for the scaled table.  Refuses n_max beyond the cap.
std::vector<Rational> exact_extinction(long n_max, long cap = 60);

// min of lower_p and max of upper_p over n in [a, b].
std::pair<Rational, Rational> interval_extrema(const BoundsTable& table, long a, long b);

struct FigureRow {
  long n;
  std::string log_n;   // midpoint of an ln n enclosure
  std::string lower;   // exact decimal at scale precision
  std::string upper;
};

std::vector<FigureRow> figure_rows(const BoundsTable& table);
void write_figure_csv(const BoundsTable& table, std::ostream& os);

// Cache CSV: header n,lower_p_num,lower_q_num,scale and one row per n >= 2.
void write_cache(const BoundsTable& table, std::ostream& os);
BoundsTable read_cache(std::istream& is);
std::string cache_file_name(const Integer& scale, long n_max);

}  // namespace roulette
