#include "roulette/enclosure.hpp"

#include <cmath>
#include <mutex>
#include <utility>

namespace roulette {

Enclosure::Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw enclosure_error("enclosure: lo > hi");
}

Enclosure Enclosure::operator*(const Enclosure& o) const {
  Rational a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
  Rational lo = a, hi = a;
  for (const Rational* p : {&b, &c, &d}) {
    if (*p < lo) lo = *p;
    if (*p > hi) hi = *p;
  }
  return {lo, hi};
}

Enclosure Enclosure::operator*(const Rational& q) const {
  if (q >= 0) return {lo_ * q, hi_ * q};
  return {hi_ * q, lo_ * q};
}

Enclosure Enclosure::operator/(const Enclosure& o) const {
  if (o.lo_ <= 0 && o.hi_ >= 0) throw enclosure_error("enclosure: division by interval containing 0");
  Rational rl = 1 / o.hi_, rh = 1 / o.lo_;
  return *this * Enclosure(rl, rh);
}

Enclosure Enclosure::pow(long k) const {
  if (k == 0) return Enclosure(Rational(1));
  if (k < 0) {
    if (lo_ <= 0) throw enclosure_error("enclosure: negative power of nonpositive interval");
    return {pow_rat(hi_, k), pow_rat(lo_, k)};
  }
  if (lo_ >= 0) return {pow_rat(lo_, k), pow_rat(hi_, k)};
  // mixed-sign bases only arise for even/odd powers of symmetric data; keep
  // the conservative hull
  Rational a = pow_rat(lo_, k), b = pow_rat(hi_, k);
  Rational lo = a < b ? a : b, hi = a < b ? b : a;
  if (k % 2 == 0 && lo_ < 0 && hi_ > 0) lo = 0;
  return {lo, hi};
}

Enclosure Enclosure::coarsen(unsigned bits) const {
  Integer den = Integer(1) << bits;
  Rational lo = Rational(floor_rat(lo_ * Rational(den))) / Rational(den);
  Rational hi = Rational(ceil_rat(hi_ * Rational(den))) / Rational(den);
  return {lo, hi};
}

Enclosure Enclosure::intersect(const Enclosure& o) const {
  Rational lo = lo_ > o.lo_ ? lo_ : o.lo_;
  Rational hi = hi_ < o.hi_ ? hi_ : o.hi_;
  if (lo > hi) throw enclosure_error("enclosure: empty intersection");
  return {lo, hi};
}

std::string Enclosure::str(int digits) const {
  return "[" + decimal_string(lo_, digits, Round::down) + ", " +
         decimal_string(hi_, digits, Round::up) + "]";
}

Rational width_target(int d) {
  return Rational(1) / Rational(pow_ui(10, d));
}

Integer certified_floor(const Enclosure& e) {
  Integer fl = floor_rat(e.lo()), fh = floor_rat(e.hi());
  if (fl != fh) throw undecidable_rounding_error("floor undecided: " + e.str());
  return fl;
}

Integer certified_ceil(const Enclosure& e) {
  Integer cl = ceil_rat(e.lo()), ch = ceil_rat(e.hi());
  if (cl != ch) throw undecidable_rounding_error("ceil undecided: " + e.str());
  return cl;
}

namespace {

// e via its factorial series.  Remainder after term K:
//   sum_{j>K} 1/j! in ( 1/(K+1)!, (K+2)/((K+1)!(K+1)) )
// Both endpoints are monotone in K, so refinements nest.
Enclosure e_series(unsigned terms) {
  Rational s(0);
  Integer fact(1);
  for (unsigned j = 0; j <= terms; ++j) {
    if (j > 0) fact *= j;
    s += Rational(1) / Rational(fact);
  }
  Integer fact_next = fact * (terms + 1);
  Rational lo = s + Rational(1) / Rational(fact_next);
  Rational hi = s + Rational(terms + 2) / (Rational(fact_next) * (terms + 1));
  return {lo, hi};
}

std::mutex e_mutex;
Enclosure e_cached = e_series(8);

}  // namespace

Enclosure e_enclosure(const Rational& target_width) {
  std::lock_guard<std::mutex> lock(e_mutex);
  unsigned terms = 8;
  while (e_cached.width() > target_width) {
    terms *= 2;
    if (terms > 1u << 20) throw enclosure_error("e_enclosure: iteration cap");
    e_cached = e_cached.intersect(e_series(terms));
  }
  return e_cached;
}

namespace {

// exp(f) for rational f in [0,1): Taylor sum with a geometric tail bound.
Enclosure exp_frac(const Rational& f, unsigned terms) {
  Rational s(1), term(1);
  for (unsigned j = 1; j <= terms; ++j) {
    term *= f;
    term /= j;
    s += term;
  }
  // remainder <= f^(terms+1)/(terms+1)! * (terms+2)/(terms+2-f)
  Rational next = term * f / (terms + 1);
  Rational tail = next * Rational(terms + 2) / (Rational(terms + 2) - f);
  return {s, s + tail};
}

}  // namespace

Enclosure exp_enclosure(const Rational& x, const Rational& target_width) {
  Integer m = floor_rat(x);
  Rational f = x - Rational(m);
  if (!mpz_fits_slong_p(m.get_mpz_t()))
    throw enclosure_error("exp_enclosure: argument out of range");
  long mi = mpz_get_si(m.get_mpz_t());

  // |exp(x)| <= e^(m+1); pick component precisions that keep the product
  // within target, then escalate if the exact widths still miss it.
  unsigned terms = 8;
  Rational etarget = target_width / 4;
  // crude magnitude cap so the e^m factor cannot blow the budget
  for (int esc = 0; esc < 48; ++esc) {
    Enclosure e = e_enclosure(etarget);
    Enclosure em = e.pow(mi);
    Enclosure ef = exp_frac(f, terms);
    Enclosure r = (em * ef).coarsen(8192);
    if (r.width() <= target_width) return r;
    terms *= 2;
    etarget /= 1024;
  }
  throw enclosure_error("exp_enclosure: iteration cap");
}

Enclosure exp_enclosure(const Enclosure& x, const Rational& target_width) {
  Enclosure a = exp_enclosure(x.lo(), target_width / 2);
  Enclosure b = exp_enclosure(x.hi(), target_width / 2);
  return {a.lo(), b.hi()};
}

namespace {

// atanh(z) for a rational z with |z| < 1; enclosure via the odd series.
Enclosure atanh_encl(const Rational& z, unsigned terms) {
  Rational z2 = z * z;
  if (z2 >= 1) throw enclosure_error("atanh: |z| >= 1");
  Rational s = z, p = z;
  for (unsigned j = 1; j <= terms; ++j) {
    p *= z2;
    s += p / (2 * j + 1);
  }
  // |tail| <= |z|^(2t+3) / ((2t+3)(1-z^2)); p holds z^(2t+1)
  Rational ap = p < 0 ? Rational(-p) : p;
  Rational bound = ap * z2 / ((2 * terms + 3) * (Rational(1) - z2));
  return {s - bound, s + bound};
}

}  // namespace

Enclosure log_enclosure(const Rational& x, const Rational& target_width) {
  if (x <= 0) throw std::domain_error("log_enclosure: nonpositive argument");
  if (x == 1) return Enclosure(Rational(0));
  // reduce by an integer power of e; the guess only affects convergence speed
  long m = static_cast<long>(std::floor(std::log(x.get_d())));
  unsigned terms = 16;
  Rational etarget = target_width / 16;
  for (int esc = 0; esc < 48; ++esc) {
    Enclosure e = e_enclosure(etarget);
    Enclosure em = e.pow(m);
    // z = (x - e^m)/(x + e^m), ln x = m + 2 atanh(z)
    Enclosure xe{x, x};
    Enclosure z = (xe - em) / (xe + em);
    if (z.lo() <= -1 || z.hi() >= 1) throw enclosure_error("log_enclosure: reduction failed");
    Enclosure at_lo = atanh_encl(z.lo(), terms);
    Enclosure at_hi = atanh_encl(z.hi(), terms);
    Enclosure at{at_lo.lo(), at_hi.hi()};
    Enclosure r = (at * Rational(2) + Rational(m)).coarsen(8192);
    if (r.width() <= target_width) return r;
    terms *= 2;
    etarget /= 1024;
  }
  throw enclosure_error("log_enclosure: iteration cap");
}

Enclosure log_enclosure(const Enclosure& x, const Rational& target_width) {
  if (x.lo() <= 0) throw std::domain_error("log_enclosure: interval touches 0");
  Enclosure a = log_enclosure(x.lo(), target_width / 2);
  Enclosure b = log_enclosure(x.hi(), target_width / 2);
  return {a.lo(), b.hi()};
}

namespace {

// [s/M, (s+1)/M] with s = floor(root_k(x M^k)) always brackets x^(1/k).
Enclosure root_bracket(const Rational& x, unsigned long k, const Integer& M) {
  Integer Mk = pow_int(M, k);
  Integer s = iroot(floor_rat(x * Rational(Mk)), k);
  return {Rational(s) / Rational(M), Rational(s + 1) / Rational(M)};
}

Integer scale_for(const Rational& target_width) {
  // smallest power of ten with 1/M <= target
  Integer M(10);
  while (Rational(1) / Rational(M) > target_width) M *= 10;
  return M;
}

}  // namespace

Enclosure root_enclosure(const Rational& x, unsigned long k, const Rational& target_width) {
  if (x < 0) throw std::domain_error("root_enclosure: negative argument");
  if (x == 0) return Enclosure(Rational(0));
  return root_bracket(x, k, scale_for(target_width));
}

Enclosure root_enclosure(const Enclosure& x, unsigned long k, const Rational& target_width) {
  if (x.lo() < 0) throw std::domain_error("root_enclosure: interval below 0");
  Integer M = scale_for(target_width);
  Enclosure a = x.lo() == 0 ? Enclosure(Rational(0)) : root_bracket(x.lo(), k, M);
  Enclosure b = root_bracket(x.hi(), k, M);
  return {a.lo(), b.hi()};
}

Enclosure sqrt_enclosure(const Rational& x, const Rational& target_width) {
  return root_enclosure(x, 2, target_width);
}

Enclosure sqrt_enclosure(const Enclosure& x, const Rational& target_width) {
  return root_enclosure(x, 2, target_width);
}

std::string decimal_string(const Rational& q, int digits, Round dir) {
  if (digits < 0) throw std::domain_error("decimal_string: negative digits");
  Integer scale = pow_ui(10, digits);
  Rational scaled = q * Rational(scale);
  Integer units = dir == Round::down ? floor_rat(scaled) : ceil_rat(scaled);
  bool neg = units < 0;
  Integer a = neg ? Integer(-units) : units;
  Integer ip = a / scale, fp = a % scale;
  std::string out = (neg ? "-" : "") + ip.get_str();
  if (digits > 0) {
    std::string frac = fp.get_str();
    if (static_cast<int>(frac.size()) < digits)
      frac.insert(0, digits - frac.size(), '0');
    out += "." + frac;
  }
  return out;
}

std::string decimal_string_annotated(const Rational& q, int digits, Round dir) {
  Integer scale = pow_ui(10, digits);
  Rational scaled = q * Rational(scale);
  bool exact = scaled.get_den() == 1;
  std::string tag = exact ? "exact" : (dir == Round::down ? "down" : "up");
  return decimal_string(q, digits, dir) + "," + tag;
}

}  // namespace roulette
