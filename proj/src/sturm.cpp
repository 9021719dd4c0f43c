#include "roulette/sturm.hpp"

#include <stdexcept>

namespace roulette {

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

long poly_degree(const Poly& p) {
  for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

Poly poly_derivative(const Poly& p) {
  Poly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  return poly_trim(std::move(d));
}

Poly poly_rem(const Poly& a, const Poly& b) {
  long db = poly_degree(b);
  if (db < 0) throw std::domain_error("poly_rem: division by zero polynomial");
  Poly r = poly_trim(a);
  const Rational& lead = b[db];
  while (poly_degree(r) >= db) {
    long dr = poly_degree(r);
    Rational c = r[dr] / lead;
    for (long i = 0; i <= db; ++i) r[dr - db + i] -= c * b[i];
    r[dr] = 0;
    r = poly_trim(std::move(r));
  }
  return r;
}

namespace {

int sign_of(const Rational& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

// Sign changes in the sequence of signs at +inf (sgn of leading coefficient)
// or -inf (flipped on odd degrees).
long sign_changes_at_infinity(const std::vector<Poly>& chain, int dir) {
  long changes = 0;
  int prev = 0;
  for (const Poly& p : chain) {
    long d = poly_degree(p);
    if (d < 0) continue;
    int s = sign_of(p[d]);
    if (dir < 0 && d % 2 == 1) s = -s;
    if (prev != 0 && s != 0 && s != prev) ++changes;
    if (s != 0) prev = s;
  }
  return changes;
}

}  // namespace

long sturm_distinct_real_roots(const Poly& p) {
  Poly p0 = poly_trim(p);
  if (poly_degree(p0) < 0) throw std::domain_error("sturm: zero polynomial");
  if (poly_degree(p0) == 0) return 0;
  std::vector<Poly> chain{p0, poly_derivative(p0)};
  while (poly_degree(chain.back()) > 0) {
    Poly r = poly_rem(chain[chain.size() - 2], chain.back());
    if (poly_degree(r) < 0) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return sign_changes_at_infinity(chain, -1) - sign_changes_at_infinity(chain, +1);
}

}  // namespace roulette
