#include "roulette/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "roulette/enclosure.hpp"
#include "roulette/parallel.hpp"

namespace roulette {

TruncationWindow truncation_window(long n) {
  if (n < 2) throw std::domain_error("truncation_window: n < 2");
  // n/e bracketed by the e enclosure; sqrt(5n) bracketed by integer sqrt,
  // then both pushed outward by one
  Enclosure e = e_enclosure(width_target(30));
  Rational ne_lo = Rational(n) / e.hi();
  Rational ne_hi = Rational(n) / e.lo();
  Integer s = isqrt(Integer(5 * n));  // s <= sqrt(5n) < s+1
  TruncationWindow w;
  Integer k1 = floor_rat(ne_lo - Rational(s + 1));
  Integer k2 = ceil_rat(ne_hi + Rational(s + 1));
  w.k1 = std::max(0L, static_cast<long>(k1.get_si()));
  w.k2 = std::min(n - 2, static_cast<long>(k2.get_si()));
  return w;
}

Rational BoundsTable::max_gap() const {
  Rational best(0);
  for (long n = 2; n <= max_n(); ++n) {
    Rational g = upper(n) - lower(n);
    if (g > best) best = g;
  }
  return best;
}

BoundsTable run_bounds(long n_max, const Integer& scale, unsigned threads,
                       const ProgressFn& progress) {
  if (n_max < 1) throw std::domain_error("run_bounds: n_max < 1");
  if (scale <= 0) throw std::domain_error("run_bounds: nonpositive scale");
  if (!scale.fits_slong_p()) throw std::domain_error("run_bounds: scale too large");
  BoundsTable table;
  table.scale = scale;
  table.lower_p.assign(n_max + 1, 0);
  table.lower_q.assign(n_max + 1, 0);
  table.lower_p[0] = scale.get_si();
  if (n_max >= 1) table.lower_q[1] = scale.get_si();
  if (n_max < 2) return table;

  OccupancyPowers powers(2);
  std::vector<int64_t> row;
  for (long n = 2; n <= n_max; ++n) {
    if (n > 2) powers.advance_row(threads);
    TruncationWindow w = truncation_window(n);
    Integer denom = pow_ui(n - 1, n);
    Integer thresh = floor_div(denom - 1, scale);
    double log2_thresh;
    if (thresh == 0) {
      log2_thresh = -1e300;
    } else {
      long exp2;
      double td = mpz_get_d_2exp(&exp2, thresh.get_mpz_t());
      log2_thresh = std::log2(td) + static_cast<double>(exp2);
    }

    // extend the shared table up front; workers only read it
    powers.ensure(n - w.k1);

    row.assign(w.k2 - w.k1 + 1, 0);
    parallel_for(
        w.k1, w.k2 + 1,
        [&](int64_t k) {
          thread_local LowerScaledScratch scratch;
          Integer num = survivor_pmf_lower_core(n, k, scale, denom, thresh, log2_thresh,
                                                powers, scratch);
          row[k - w.k1] = num.get_si();
        },
        threads);

    Integer accp(0), accq(0);
    for (long k = w.k1; k <= w.k2; ++k) {
      int64_t pk = row[k - w.k1];
      if (pk == 0) continue;
      accp += Integer(pk) * Integer(table.lower_p[k]);
      accq += Integer(pk) * Integer(table.lower_q[k]);
    }
    table.lower_p[n] = floor_div(accp, scale).get_si();
    table.lower_q[n] = floor_div(accq, scale).get_si();
    if (progress) progress(n, n_max);
  }
  return table;
}

std::vector<Rational> exact_extinction(long n_max, long cap) {
  if (n_max > cap) {
    std::ostringstream msg;
    msg << "exact_extinction: n_max " << n_max << " exceeds cap " << cap
        << " (cost grows quickly; raise the cap explicitly if you mean it)";
    throw std::domain_error(msg.str());
  }
  std::vector<Rational> p;
  p.reserve(std::max(0L, n_max + 1));
  if (n_max >= 0) p.emplace_back(1);  // p_0
  if (n_max >= 1) p.emplace_back(0);  // p_1
  for (long n = 2; n <= n_max; ++n) {
    Pmf pmf = survivor_pmf(n);
    Rational v(0);
    for (const auto& [k, mass] : pmf.mass()) v += mass * p[k];
    p.push_back(v);
  }
  return p;
}

std::pair<Rational, Rational> interval_extrema(const BoundsTable& table, long a, long b) {
  if (a < 2 || b < a || b > table.max_n())
    throw std::domain_error("interval_extrema: interval out of range");
  Rational min_lower = table.lower(a), max_upper = table.upper(a);
  for (long n = a + 1; n <= b; ++n) {
    Rational lo = table.lower(n), up = table.upper(n);
    if (lo < min_lower) min_lower = lo;
    if (up > max_upper) max_upper = up;
  }
  return {min_lower, max_upper};
}

namespace {

int scale_digits(const Integer& scale) {
  int d = 0;
  Integer s = scale;
  while (s > 1) {
    s = s / 10;
    ++d;
  }
  return d;
}

}  // namespace

std::vector<FigureRow> figure_rows(const BoundsTable& table) {
  std::vector<FigureRow> rows;
  int digits = scale_digits(table.scale);
  for (long n = 2; n <= table.max_n(); ++n) {
    Enclosure ln = log_enclosure(Rational(n), width_target(15));
    FigureRow r;
    r.n = n;
    r.log_n = decimal_string(ln.mid(), 12, Round::down);
    r.lower = decimal_string(table.lower(n), digits, Round::down);
    r.upper = decimal_string(table.upper(n), digits, Round::up);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_figure_csv(const BoundsTable& table, std::ostream& os) {
  os << "n,log_n,lower,upper\n";
  for (const auto& r : figure_rows(table))
    os << r.n << "," << r.log_n << "," << r.lower << "," << r.upper << "\n";
}

void write_cache(const BoundsTable& table, std::ostream& os) {
  os << "n,lower_p_num,lower_q_num,scale\n";
  for (long n = 2; n <= table.max_n(); ++n)
    os << n << "," << table.lower_p[n] << "," << table.lower_q[n] << ","
       << table.scale.get_str() << "\n";
}

BoundsTable read_cache(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "n,lower_p_num,lower_q_num,scale")
    throw cache_error("cache: bad or missing header");
  BoundsTable table;
  table.scale = 0;
  table.lower_p = {0, 0};
  table.lower_q = {0, 0};
  long expect = 2;
  long lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string f0, f1, f2, f3;
    if (!std::getline(ss, f0, ',') || !std::getline(ss, f1, ',') ||
        !std::getline(ss, f2, ',') || !std::getline(ss, f3))
      throw cache_error("cache: malformed row at line " + std::to_string(lineno));
    long n;
    int64_t p, q;
    Integer scale;
    try {
      n = std::stol(f0);
      p = std::stoll(f1);
      q = std::stoll(f2);
      scale = Integer(f3);
    } catch (const std::exception&) {
      throw cache_error("cache: unparsable row at line " + std::to_string(lineno));
    }
    if (n != expect)
      throw cache_error("cache: row order broken at line " + std::to_string(lineno) +
                        " (expected n=" + std::to_string(expect) + ")");
    if (table.scale == 0)
      table.scale = scale;
    else if (table.scale != scale)
      throw cache_error("cache: scale mismatch at line " + std::to_string(lineno));
    if (p < 0 || q < 0 || Integer(p) + Integer(q) > table.scale)
      throw cache_error("cache: invariant p+q <= scale violated at line " +
                        std::to_string(lineno));
    table.lower_p.push_back(p);
    table.lower_q.push_back(q);
    ++expect;
  }
  if (table.scale == 0) throw cache_error("cache: no data rows");
  table.lower_p[0] = table.scale.get_si();
  table.lower_q[1] = table.scale.get_si();
  if (table.lower_p[2] != table.scale.get_si())
    throw cache_error("cache: row n=2 must hold lower_p = scale");
  return table;
}

std::string cache_file_name(const Integer& scale, long n_max) {
  return "bounds_v1_s" + scale.get_str() + "_n" + std::to_string(n_max) + ".csv";
}

}  // namespace roulette
