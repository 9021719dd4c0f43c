#include "roulette/survivor.hpp"

#include <cmath>
#include <stdexcept>

#include "roulette/parallel.hpp"
#include "roulette/sturm.hpp"

namespace roulette {

namespace {

double log2_of(const Integer& v) {
  if (v == 0) return -1e300;
  long exp;
  double d = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(std::abs(d)) + static_cast<double>(exp);
}

}  // namespace

Integer truncated_term(long n, long k, long r) {
  if (n < 2 || k < 0 || r < 0 || k > n || r > n - k)
    throw std::domain_error("truncated_term: bad indices");
  long a = n - k - r;
  if (a <= 1) return 0;  // a^(n-a)(a-1)^a vanishes at a in {0,1}
  Integer t = binomial(n, k) * binomial(n - k, r);
  t *= pow_ui(a, k + r);
  t *= pow_ui(a - 1, a);
  return t;
}

void OccupancyPowers::ensure(long a_top) {
  while (static_cast<long>(entries_.size()) + 1 < a_top) {
    long a = static_cast<long>(entries_.size()) + 2;
    Integer w = pow_ui(a, row_ - a);
    w *= pow_ui(a - 1, a);
    log2_.push_back(log2_of(w));
    entries_.push_back(std::move(w));
  }
}

void OccupancyPowers::advance_row(unsigned threads) {
  ++row_;
  int64_t count = static_cast<int64_t>(entries_.size());
  parallel_for(
      0, count,
      [&](int64_t i) {
        mpz_mul_ui(entries_[i].get_mpz_t(), entries_[i].get_mpz_t(), i + 2);
        log2_[i] += std::log2(static_cast<double>(i + 2));
      },
      threads);
}

Pmf survivor_pmf(long n) {
  if (n < 2) throw std::domain_error("survivor_pmf: n < 2");
  Integer denom = pow_ui(n - 1, n);
  std::vector<std::pair<long, Integer>> nums;
  Integer check(0);
  for (long k = 0; k <= n - 2; ++k) {
    Integer acc(0);
    for (long r = 0; r <= n - k - 2; ++r) {
      Integer t = truncated_term(n, k, r);
      if (r % 2 == 0)
        acc += t;
      else
        acc -= t;
    }
    check += acc;
    nums.emplace_back(k, std::move(acc));
  }
  if (check != denom) throw std::logic_error("survivor_pmf: masses do not sum to 1");
  return Pmf::from_numerators(nums, denom);
}

Integer survivor_pmf_lower_core(long n, long k, const Integer& scale,
                                const Integer& denom, const Integer& thresh,
                                double log2_thresh, OccupancyPowers& powers,
                                LowerScaledScratch& s) {
  long m = n - k;
  mpz_bin_uiui(s.cnk.get_mpz_t(), n, k);
  // scale * Cnk * u < denom  <=>  u <= floor((denom-1)/scale) / Cnk
  mpz_fdiv_q(s.bk.get_mpz_t(), thresh.get_mpz_t(), s.cnk.get_mpz_t());
  double log2_bk = log2_thresh - log2_of(s.cnk);

  s.acc = 0;
  s.cmr = 1;  // C(m, r), rolled in r
  double log2_cmr = 0;
  for (long r = 0;; ++r) {
    long a = m - r;
    if (a <= 1) break;  // remaining terms are zero
    double lw = powers.log2_at(a);
    if ((r & 1) == 0) {
      // stop at the first even index whose term drops below the threshold;
      // the float estimate only gates the exact comparison (64-bit margin)
      if (log2_cmr + lw < log2_bk + 64) {
        mpz_mul(s.u.get_mpz_t(), s.cmr.get_mpz_t(), powers.at(a).get_mpz_t());
        if (s.u <= s.bk) break;
        s.acc += s.u;
      } else {
        mpz_addmul(s.acc.get_mpz_t(), s.cmr.get_mpz_t(), powers.at(a).get_mpz_t());
      }
    } else {
      mpz_submul(s.acc.get_mpz_t(), s.cmr.get_mpz_t(), powers.at(a).get_mpz_t());
    }
    mpz_mul_ui(s.cmr.get_mpz_t(), s.cmr.get_mpz_t(), m - r);
    mpz_divexact_ui(s.cmr.get_mpz_t(), s.cmr.get_mpz_t(), r + 1);
    log2_cmr += std::log2(static_cast<double>(m - r)) - std::log2(static_cast<double>(r + 1));
  }
  if (s.acc <= 0) return 0;
  s.acc *= s.cnk;
  s.acc *= scale;
  return floor_div(s.acc, denom);
}

ScaledProb survivor_pmf_lower(long n, long k, const Integer& scale) {
  if (n < 2) throw std::domain_error("survivor_pmf_lower: n < 2");
  if (k < 0 || k > n - 2) throw std::domain_error("survivor_pmf_lower: k outside {0,...,n-2}");
  if (scale <= 0) throw std::domain_error("survivor_pmf_lower: nonpositive scale");
  OccupancyPowers powers(n);
  powers.ensure(n - k);
  Integer denom = pow_ui(n - 1, n);
  Integer thresh = floor_div(denom - 1, scale);
  LowerScaledScratch scratch;
  Integer num = survivor_pmf_lower_core(n, k, scale, denom, thresh, log2_of(thresh),
                                        powers, scratch);
  return ScaledProb{num, scale};
}

Pmf empty_boxes_pmf(long balls, long boxes) {
  if (boxes < 1) throw std::domain_error("empty_boxes_pmf: boxes < 1");
  if (balls < 0) throw std::domain_error("empty_boxes_pmf: balls < 0");
  // exact DP on the number of occupied boxes; denominator boxes^balls
  std::vector<Integer> occ(boxes + 1, Integer(0));
  occ[0] = 1;
  for (long t = 0; t < balls; ++t) {
    std::vector<Integer> next(boxes + 1, Integer(0));
    for (long c = 0; c <= boxes; ++c) {
      if (occ[c] == 0) continue;
      next[c] += occ[c] * c;
      if (c < boxes) next[c + 1] += occ[c] * (boxes - c);
    }
    occ.swap(next);
  }
  Integer denom = pow_ui(boxes, balls);
  std::vector<std::pair<long, Integer>> nums;
  for (long c = 0; c <= boxes; ++c)
    if (occ[c] != 0) nums.emplace_back(boxes - c, occ[c]);
  return Pmf::from_numerators(nums, denom);
}

Pmf y_pmf(long n) {
  if (n < 2) throw std::domain_error("y_pmf: n < 2");
  return empty_boxes_pmf(n - 1, n - 1);
}

Pmf z_pmf(long n) {
  if (n < 2) throw std::domain_error("z_pmf: n < 2");
  return empty_boxes_pmf(n, n - 1).shifted(1);
}

namespace {

// Closed-form tail sums for Y over denominator m^m with m = n-1.  The
// coefficients C(k+r-1,r) C(m,k+r) (at_least) and C(k+r-1,r-1) C(m,k+r)
// (at_most) roll across r by word-sized factors.
Integer y_tail_sum(long m, long k, Tail dir, long r_begin, long r_end) {
  Integer acc(0), c, pw;
  if (dir == Tail::at_least) {
    c = binomial(k + r_begin - 1, r_begin) * binomial(m, k + r_begin);
  } else {
    if (r_begin == 0) return y_tail_sum(m, k, dir, 1, r_end);
    c = binomial(k + r_begin - 1, r_begin - 1) * binomial(m, k + r_begin);
  }
  for (long r = r_begin; r < r_end; ++r) {
    unsigned long j = m - k - r;
    unsigned long v = j == 0 ? 0 : __builtin_ctzl(j);
    mpz_ui_pow_ui(pw.get_mpz_t(), j >> v, m);
    if (v) mpz_mul_2exp(pw.get_mpz_t(), pw.get_mpz_t(), v * static_cast<unsigned long>(m));
    if (r & 1)
      mpz_submul(acc.get_mpz_t(), c.get_mpz_t(), pw.get_mpz_t());
    else
      mpz_addmul(acc.get_mpz_t(), c.get_mpz_t(), pw.get_mpz_t());
    if (r + 1 < r_end) {
      mpz_mul_ui(c.get_mpz_t(), c.get_mpz_t(), k + r);
      mpz_mul_ui(c.get_mpz_t(), c.get_mpz_t(), m - k - r);
      if (dir == Tail::at_least)
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), r + 1);
      else
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), r);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k + r + 1);
    }
  }
  return acc;
}

}  // namespace

Rational y_tail(long n, long k, Tail dir, unsigned threads) {
  if (n < 2) throw std::domain_error("y_tail: n < 2");
  if (dir == Tail::at_least && k < 1) throw std::domain_error("y_tail: at_least needs k >= 1");
  if (dir == Tail::at_most && k < 0) throw std::domain_error("y_tail: at_most needs k >= 0");
  long m = n - 1;
  if (k > m) return dir == Tail::at_least ? Rational(0) : Rational(1);
  long r_end = m - k + 1;
  Integer total(0);
  if (threads <= 1 || r_end < 256) {
    total = y_tail_sum(m, k, dir, 0, r_end);
  } else {
    long chunk = (r_end + 4 * threads - 1) / (4 * threads);
    long nchunks = (r_end + chunk - 1) / chunk;
    std::vector<Integer> partial(nchunks);
    parallel_for(
        0, nchunks,
        [&](int64_t i) {
          partial[i] = y_tail_sum(m, k, dir, i * chunk, std::min(r_end, (i + 1) * chunk));
        },
        threads);
    for (const auto& p : partial) total += p;
  }
  Rational frac = Rational(total) / Rational(pow_ui(m, m));
  return dir == Tail::at_least ? frac : Rational(1) + frac;
}

Integer stirling2(long i, long k) {
  if (i < 0 || k < 0) throw std::domain_error("stirling2: negative argument");
  if (k > i) return 0;
  if (i == 0) return k == 0 ? 1 : 0;
  std::vector<Integer> row(k + 1, Integer(0));
  row[0] = 1;  // S(0,0)
  for (long t = 1; t <= i; ++t) {
    for (long j = std::min<long>(k, t); j >= 1; --j) row[j] = row[j] * j + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

std::vector<Integer> y_generating_numerator(long n) {
  if (n < 2) throw std::domain_error("y_generating_numerator: n < 2");
  // sum_k C(n-1,k)(n-k-1)^(n-1) (z-1)^k, expanded
  std::vector<Integer> coef(n - 1, Integer(0));
  for (long k = 0; k <= n - 1; ++k) {
    Integer base = binomial(n - 1, k) * pow_ui(n - k - 1, n - 1);
    if (base == 0) continue;
    for (long j = 0; j <= k; ++j) {
      Integer c = base * binomial(k, j);
      if ((k - j) % 2 == 0)
        coef[j] += c;
      else
        coef[j] -= c;
    }
  }
  return coef;
}

bool y_generating_poly_real_rooted(long n, long n_small) {
  if (n < 3 || n > n_small)
    throw std::domain_error("y_generating_poly_real_rooted: n outside [3, n_small]");
  std::vector<Integer> coef = y_generating_numerator(n);
  Poly p;
  for (const auto& c : coef) p.emplace_back(Rational(c));
  p = poly_trim(std::move(p));
  long deg = poly_degree(p);
  if (deg < 0) throw std::domain_error("y_generating_poly_real_rooted: zero polynomial");
  return sturm_distinct_real_roots(p) == deg;
}

}  // namespace roulette
