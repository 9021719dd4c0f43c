#include "roulette/intervals.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "roulette/survivor.hpp"

namespace roulette {

Enclosure s0_enclosure(const Rational& target_width) {
  // size the partial sum so the tail majorant fits within a quarter of the
  // budget: tail <= e^{-(K+1)/4} / (1 - e^{-1/4})
  double t = std::max(target_width.get_d(), 1e-300);
  long K = std::max(8L, static_cast<long>(4.0 * (std::log(1.0 / t) + 3.0)) + 4);
  for (int esc = 0; esc < 8; ++esc) {
    Rational tw = target_width / (1000 * K * K);
    Enclosure E = exp_enclosure(Rational(-1, 2), tw);
    Enclosure partial(Rational(0));
    Enclosure Ei(Rational(1));
    for (long i = 1; i <= K; ++i) {
      Ei = (Ei * E).coarsen(1024);
      partial = partial + sqrt_enclosure(Rational(i), tw) * Ei;
    }
    partial = partial.coarsen(2048);
    Enclosure tail_top = exp_enclosure(frac(-(K + 1), 4), tw);
    Enclosure tail_den = Enclosure(Rational(1)) - exp_enclosure(Rational(-1, 4), tw);
    Rational tail_hi = tail_top.hi() / tail_den.lo();
    Enclosure result(partial.lo(), partial.hi() + tail_hi);
    if (result.width() <= target_width) return result;
    K *= 2;
  }
  throw enclosure_error("s0_enclosure: iteration cap");
}

namespace {

struct SeqEnclosures {
  Enclosure s0, c0, c1, c2;
  std::vector<Enclosure> left, right;
};

// Endpoint formulas with interval-valued start data; gamma exact rational.
SeqEnclosures build_seq_enclosures(const Enclosure& I0m, const Enclosure& I0p,
                                   const Rational& gamma, long K, int digits) {
  Rational tw = width_target(digits);
  SeqEnclosures out;
  out.s0 = s0_enclosure(tw);
  Enclosure e = e_enclosure(tw);
  Enclosure sqrt_e = sqrt_enclosure(e, tw);
  Enclosure sqrt_I0m = sqrt_enclosure(I0m, tw);
  Enclosure sqrt_I0p = sqrt_enclosure(I0p, tw);
  out.c0 = (sqrt_I0p - sqrt_I0m) * Rational(gamma) / (out.s0 * sqrt_e);

  Enclosure coef_m = out.c0 * sqrt_e / sqrt_I0m;  // c0 sqrt(e/I0-)
  Enclosure coef_p = out.c0 * sqrt_e / sqrt_I0p;
  Enclosure E = exp_enclosure(Rational(-1, 2), tw);
  Enclosure Ei(Rational(1));        // E^i
  Enclosure sigma(Rational(0));     // sum_{i<=k} sqrt(i) E^i
  Enclosure ek(Rational(1));        // e^k
  out.left.reserve(K + 1);
  out.right.reserve(K + 1);
  out.left.push_back(I0m);
  out.right.push_back(I0p);
  for (long k = 1; k <= K; ++k) {
    Ei = (Ei * E).coarsen(1024);
    sigma = (sigma + sqrt_enclosure(Rational(k), tw) * Ei).coarsen(1024);
    ek = (ek * e).coarsen(1024);
    out.left.push_back(I0m * ek * (Enclosure(Rational(1)) + coef_m * sigma));
    out.right.push_back(I0p * ek * (Enclosure(Rational(1)) - coef_p * sigma));
  }

  Enclosure num = e * out.c0 * out.c0 * Rational(1, 2);
  Enclosure den1 = (e - Rational(1)) * (Enclosure(Rational(1)) + out.c0 * out.s0 * sqrt_e / sqrt_I0m);
  out.c1 = num / den1;
  Enclosure den2 = (e - Rational(1)) - out.c0 * (e * Rational(2) - Rational(1)) / (sqrt_I0p * Rational(3));
  out.c2 = num / den2;
  return out;
}

void validate_params(const IntervalSeqParams& p) {
  if (p.I0_minus < 2 || p.I0_plus < p.I0_minus)
    throw std::domain_error("interval seq: need 2 <= I0_minus <= I0_plus");
  if (p.gamma <= 0 || p.gamma > 1)
    throw std::domain_error("interval seq: gamma outside (0,1]");
  for (int digits = 25; digits <= 100; digits *= 2) {
    Enclosure e = e_enclosure(width_target(digits));
    if (p.I0_plus < e.lo() * p.I0_minus) return;
    if (p.I0_plus >= e.hi() * p.I0_minus)
      throw std::domain_error("interval seq: I0_plus < e*I0_minus violated");
  }
  throw std::domain_error("interval seq: I0_plus < e*I0_minus undecided");
}

}  // namespace

IntervalSeq build_interval_seq(const IntervalSeqParams& params, long K) {
  validate_params(params);
  if (K < 0) throw std::domain_error("build_interval_seq: K < 0");
  for (int digits : {20, 30, 45, 60}) {
    SeqEnclosures enc = build_seq_enclosures(Enclosure(params.I0_minus),
                                             Enclosure(params.I0_plus),
                                             params.gamma, K, digits);
    try {
      IntervalSeq seq;
      seq.params = params;
      seq.s0 = enc.s0;
      seq.c0 = enc.c0;
      seq.c1 = enc.c1;
      seq.c2 = enc.c2;
      seq.left_encl = enc.left;
      seq.right_encl = enc.right;
      for (long k = 0; k <= K; ++k)
        seq.intervals.emplace_back(certified_floor(enc.left[k]),
                                   certified_ceil(enc.right[k]));
      return seq;
    } catch (const undecidable_rounding_error&) {
      // escalate
    }
  }
  throw undecidable_rounding_error(
      "build_interval_seq: endpoint straddles an integer at width 1e-60");
}

Enclosure lemma27_bound(const IntervalSeq& seq) {
  if (!(seq.c1.lo() > 0) || !(seq.c2.lo() > 0))
    throw std::domain_error("lemma27_bound: c1/c2 not provably positive");
  Rational tw = width_target(18);
  Enclosure one{Rational(1)};
  Enclosure e1 = exp_enclosure(seq.c1, tw) - one;
  Enclosure e2 = exp_enclosure(seq.c2, tw) - one;
  if (!(e1.lo() > 0) || !(e2.lo() > 0))
    throw std::domain_error("lemma27_bound: e^c - 1 not provably positive");
  return one / e1 + one / e2;
}

std::pair<Rational, Rational> hv_tail_sums(unsigned threads) {
  Rational h(0), v(0);
  for (size_t k = 1; k < kHillIntervals.size(); ++k) {
    h += y_tail(kHillIntervals[k].first, kHillIntervals[k - 1].first - 1, Tail::at_most,
                threads);
    h += y_tail(kHillIntervals[k].second, kHillIntervals[k - 1].second, Tail::at_least,
                threads);
  }
  for (size_t k = 1; k < kValleyIntervals.size(); ++k) {
    v += y_tail(kValleyIntervals[k].first, kValleyIntervals[k - 1].first - 1, Tail::at_most,
                threads);
    v += y_tail(kValleyIntervals[k].second, kValleyIntervals[k - 1].second, Tail::at_least,
                threads);
  }
  return {h, v};
}

namespace {

CertificateCheck make_check(const std::string& name, bool passed, const std::string& detail) {
  return CertificateCheck{name, passed, detail};
}

std::string rat10(const Rational& q, Round dir) { return decimal_string(q, 10, dir); }

}  // namespace

CertificateReport nonconvergence_certificate(const BoundsTable& table, unsigned threads) {
  if (table.max_n() < 5143)
    throw std::domain_error("nonconvergence_certificate: bounds table must cover n <= 5143");
  CertificateReport rep;

  auto [min_h0, max_h0_upper] = interval_extrema(table, kHillIntervals[0].first,
                                                 kHillIntervals[0].second);
  (void)max_h0_upper;
  auto [min_v0_lower, max_v0] = interval_extrema(table, kValleyIntervals[0].first,
                                                 kValleyIntervals[0].second);
  (void)min_v0_lower;
  rep.min_lower_h0 = min_h0;
  rep.max_upper_v0 = max_v0;

  std::tie(rep.hill_tail_sum, rep.valley_tail_sum) = hv_tail_sums(threads);

  IntervalSeq seq_h = build_interval_seq(
      {Rational(kHillIntervals.back().first), Rational(kHillIntervals.back().second), Rational(1)}, 8);
  IntervalSeq seq_v = build_interval_seq(
      {Rational(kValleyIntervals.back().first), Rational(kValleyIntervals.back().second), Rational(1)}, 8);
  rep.lemma27_hill = lemma27_bound(seq_h);
  rep.lemma27_valley = lemma27_bound(seq_v);

  rep.escape_lower_h = Rational(1) - rep.lemma27_hill.hi() - rep.hill_tail_sum;
  rep.escape_lower_v = Rational(1) - rep.lemma27_valley.hi() - rep.valley_tail_sum;
  rep.final_lower = rep.escape_lower_h * min_h0;
  rep.final_upper = Rational(1) - rep.escape_lower_v * (Rational(1) - max_v0);

  const Rational hill_min_ref = frac(Integer(5163652651), Integer(10000000000));
  const Rational valley_max_ref = frac(Integer(4767018688), Integer(10000000000));
  const Rational hill_tail_ref = frac(Integer(10954222), Integer(10000000000));
  const Rational valley_tail_ref = frac(Integer(6060062), Integer(10000000000));
  const Rational hill_escape_ref = frac(Integer(7188677), Integer(10000000000));
  const Rational final_lower_ref = frac(515428, 1000000);
  const Rational final_upper_ref = frac(477449, 1000000);

  rep.checks.push_back(make_check("min_lower_H0 >= 0.5163652651", min_h0 >= hill_min_ref,
                                  rat10(min_h0, Round::down)));
  rep.checks.push_back(make_check("max_upper_V0 <= 0.4767018688", max_v0 <= valley_max_ref,
                                  rat10(max_v0, Round::up)));
  rep.checks.push_back(make_check("hill_tail_sum <= 0.0010954222",
                                  rep.hill_tail_sum <= hill_tail_ref,
                                  rat10(rep.hill_tail_sum, Round::up)));
  rep.checks.push_back(make_check("valley_tail_sum <= 0.0006060062",
                                  rep.valley_tail_sum <= valley_tail_ref,
                                  rat10(rep.valley_tail_sum, Round::up)));
  rep.checks.push_back(make_check("hill_interval_escape <= 0.0007188677",
                                  rep.lemma27_hill.hi() <= hill_escape_ref,
                                  rat10(rep.lemma27_hill.hi(), Round::up)));
  rep.checks.push_back(make_check("hill_escape_probability_positive", rep.escape_lower_h > 0,
                                  rat10(rep.escape_lower_h, Round::down)));
  rep.checks.push_back(make_check("valley_escape_probability_positive",
                                  rep.escape_lower_v > 0,
                                  rat10(rep.escape_lower_v, Round::down)));
  rep.checks.push_back(make_check("final_lower >= 0.515428", rep.final_lower >= final_lower_ref,
                                  rat10(rep.final_lower, Round::down)));
  rep.checks.push_back(make_check("final_upper <= 0.477449", rep.final_upper <= final_upper_ref,
                                  rat10(rep.final_upper, Round::up)));

  rep.ok = true;
  for (const auto& c : rep.checks) rep.ok = rep.ok && c.passed;
  return rep;
}

std::string CertificateReport::failing() const {
  std::string out;
  for (const auto& c : checks)
    if (!c.passed) {
      if (!out.empty()) out += ", ";
      out += c.name;
    }
  return out;
}

void CertificateReport::render(std::ostream& os) const {
  os << "non-convergence certificate\n";
  os << "  hills:";
  for (const auto& [a, b] : hills) os << " [" << a << "," << b << "]";
  os << "\n  valleys:";
  for (const auto& [a, b] : valleys) os << " [" << a << "," << b << "]";
  os << "\n";
  os << "  min_lower_H0      = " << rat10(min_lower_h0, Round::down) << "\n";
  os << "  max_upper_V0      = " << rat10(max_upper_v0, Round::up) << "\n";
  os << "  hill_tail_sum     = " << rat10(hill_tail_sum, Round::up) << " (exact rational)\n";
  os << "  valley_tail_sum   = " << rat10(valley_tail_sum, Round::up) << " (exact rational)\n";
  os << "  hill_escape       = " << lemma27_hill.str(12) << "\n";
  os << "  valley_escape     = " << lemma27_valley.str(12) << "\n";
  os << "  escape_lower_h    = " << rat10(escape_lower_h, Round::down) << "\n";
  os << "  escape_lower_v    = " << rat10(escape_lower_v, Round::down) << "\n";
  os << "  final_lower       = " << rat10(final_lower, Round::down) << "\n";
  os << "  final_upper       = " << rat10(final_upper, Round::up) << "\n";
  for (const auto& c : checks)
    os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << "   (" << c.detail << ")\n";
  os << (ok ? "certificate: SUCCESS\n" : "certificate: FAILURE (" + failing() + ")\n");
}

void CertificateReport::write_csv(std::ostream& os) const {
  os << "check,passed,value\n";
  for (const auto& c : checks)
    os << "\"" << c.name << "\"," << (c.passed ? 1 : 0) << "," << c.detail << "\n";
}

JIntervalsReport j_intervals(long k0, const Rational& w, const Rational& delta, long K) {
  if (delta <= 0 || delta >= Rational(1, 3))
    throw std::domain_error("j_intervals: delta outside (0, 1/3)");
  if (w < 0 || w > 1) throw std::domain_error("j_intervals: w outside [0,1]");
  if (k0 < 1 || K < 1) throw std::domain_error("j_intervals: need k0 >= 1, K >= 1");
  JIntervalsReport rep;
  rep.k0 = k0;
  rep.w = w;
  rep.delta = delta;
  Rational x = Rational(k0) + w;

  for (int digits : {20, 30, 45, 60}) {
    Rational tw = width_target(digits);
    try {
      // J_0 = [A, A + A^(2/3)] with A = e^(x - 3 delta)
      Enclosure A = exp_enclosure(x - 3 * delta, tw);
      Enclosure j0_hi = A + root_enclosure(A * A, 3, tw);
      std::vector<Enclosure> j_lo{A}, j_hi{j0_hi};
      for (long k = 1; k <= K; ++k) {
        j_lo.push_back(exp_enclosure(x + Rational(k) - delta, tw));
        j_hi.push_back(exp_enclosure(x + Rational(k) + delta, tw));
      }

      // comparison sequence with delta_x = (1/12) e^(-x/3), gamma = 1/4
      Enclosure delta_x = exp_enclosure(-x / 3, tw) * Rational(1, 12);
      Enclosure i0m = exp_enclosure(Enclosure(Rational(x)) - delta_x * Rational(2), tw);
      Enclosure i0p = exp_enclosure(Enclosure(Rational(x)) + delta_x * Rational(2), tw);
      SeqEnclosures seq = build_seq_enclosures(i0m, i0p, Rational(1, 4), K, digits);

      rep.j.clear();
      rep.i_of_x.clear();
      rep.j_in_i.assign(K + 1, false);
      for (long k = 0; k <= K; ++k) {
        rep.j.emplace_back(certified_ceil(j_lo[k]), certified_floor(j_hi[k]));
        rep.i_of_x.emplace_back(certified_floor(seq.left[k]), certified_ceil(seq.right[k]));
      }
      for (long k = 1; k <= K; ++k) {
        bool left_ok = Rational(rep.i_of_x[k].first) <= j_lo[k].lo();
        bool right_ok = j_hi[k].hi() <= Rational(rep.i_of_x[k].second);
        rep.j_in_i[k] = left_ok && right_ok;
      }
      rep.i0_in_j0 = Rational(rep.i_of_x[0].first) >= A.hi() &&
                     Rational(rep.i_of_x[0].second) <= j0_hi.lo();
      return rep;
    } catch (const undecidable_rounding_error&) {
      // escalate
    }
  }
  throw undecidable_rounding_error("j_intervals: endpoint straddles an integer at width 1e-60");
}

void write_intervals_csv(const std::vector<std::pair<Integer, Integer>>& intervals,
                         std::ostream& os) {
  os << "k,lo,hi\n";
  for (size_t k = 0; k < intervals.size(); ++k)
    os << k << "," << intervals[k].first.get_str() << "," << intervals[k].second.get_str()
       << "\n";
}

}  // namespace roulette
