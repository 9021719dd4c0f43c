#include "roulette/coupling.hpp"

#include <atomic>
#include <stdexcept>

#include "roulette/enclosure.hpp"
#include "roulette/parallel.hpp"

namespace roulette {

namespace {

constexpr uint64_t kTagU = 0x55aa55aa55aa55aaULL;
constexpr uint64_t kTagV = 0x1234abcd4321dcbaULL;
constexpr uint64_t kTagTrial = 0x7f7f7f7f7f7f7f7fULL;

inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t chain(uint64_t h, uint64_t w) { return mix64(h ^ w); }

inline uint64_t elem_hash_lo(long e) { return mix64(static_cast<uint64_t>(e)); }
inline uint64_t elem_hash_hi(long e) {
  return mix64(static_cast<uint64_t>(e) ^ 0xc2b2ae3d27d4eb4fULL);
}

// Order-statistics tree over {1..n} with presence counts.
class Fenwick {
 public:
  explicit Fenwick(long n) : n_(n), t_(n + 1) {
    for (long i = 1; i <= n; ++i) t_[i] = i & (-i);  // all present
  }
  void remove(long i) {
    for (; i <= n_; i += i & (-i)) --t_[i];
  }
  long prefix(long i) const {
    long s = 0;
    for (; i > 0; i -= i & (-i)) s += t_[i];
    return s;
  }
  bool contains(long i) const { return prefix(i) - prefix(i - 1) == 1; }
  // 0-based k-th present element
  long select(long k) const {
    long pos = 0, rem = k + 1;
    long step = 1;
    while ((step << 1) <= n_) step <<= 1;
    for (; step > 0; step >>= 1) {
      long nxt = pos + step;
      if (nxt <= n_ && t_[nxt] < rem) {
        pos = nxt;
        rem -= t_[nxt];
      }
    }
    return pos + 1;
  }

 private:
  long n_;
  std::vector<long> t_;
};

}  // namespace

CouplingRealization::CouplingRealization(uint64_t seed, int64_t copy)
    : seed_(seed), copy_(copy) {}

uint64_t CouplingRealization::u_int(long j) {
  if (j < 1) throw std::domain_error("u_int: j < 1");
  while (static_cast<long>(u_.size()) < j) {
    long next = static_cast<long>(u_.size()) + 1;
    uint64_t h = chain(chain(chain(seed_, static_cast<uint64_t>(copy_)), kTagU),
                       static_cast<uint64_t>(next));
    u_.push_back(h);
  }
  return u_[j - 1];
}

bool CouplingRealization::u_leq(long j, int64_t num, int64_t den) {
  if (num <= 0) return false;  // U > 0 almost surely, and surely here
  unsigned __int128 lhs = (static_cast<unsigned __int128>(u_int(j)) + 1) *
                          static_cast<unsigned __int128>(den);
  unsigned __int128 rhs = static_cast<unsigned __int128>(num) << 64;
  return lhs <= rhs;
}

uint64_t CouplingRealization::victim_rank(long i, uint64_t set_hash_lo,
                                          uint64_t set_hash_hi, uint64_t size) {
  if (size == 0) throw std::logic_error("victim_rank: empty choice set");
  uint64_t base = chain(chain(chain(chain(chain(seed_, static_cast<uint64_t>(copy_)), kTagV),
                                    static_cast<uint64_t>(i)),
                              set_hash_lo),
                        set_hash_hi);
  uint64_t rem = (0 - size) % size;  // 2^64 mod size
  for (uint64_t t = 0;; ++t) {
    uint64_t v = chain(base, t);
    if (rem == 0 || v < 0 - rem) return v % size;
  }
}

RoundOutcome simulate_round(CouplingRealization& real, long n, bool trace) {
  if (n < 2) throw std::domain_error("simulate_round: n < 2");
  RoundOutcome out;
  out.n = n;
  Fenwick alive(n);
  uint64_t hlo = 0, hhi = 0;
  for (long e = 1; e <= n; ++e) {
    hlo ^= elem_hash_lo(e);
    hhi ^= elem_hash_hi(e);
  }
  long s = n, y = n, z = n;
  if (trace) {
    out.s_steps.reserve(n + 1);
    out.y_steps.reserve(n + 1);
    out.z_steps.reserve(n + 1);
    out.s_steps.push_back(s);
    out.y_steps.push_back(y);
    out.z_steps.push_back(z);
  }
  for (long i = 0; i < n; ++i) {
    long shooter = i + 1;
    long ind = alive.contains(shooter) ? 1 : 0;
    if (real.u_leq(n - i, s - ind, n - 1)) {
      // victim uniform on A \ {shooter}
      long choices = s - ind;
      uint64_t rank = real.victim_rank(shooter, hlo, hhi, choices);
      long r = static_cast<long>(rank);
      if (ind) {
        long before = alive.prefix(shooter - 1);
        if (r >= before) ++r;
      }
      long victim = alive.select(r);
      alive.remove(victim);
      hlo ^= elem_hash_lo(victim);
      hhi ^= elem_hash_hi(victim);
      --s;
    }
    if (real.u_leq(n - i, y, n - 1)) --y;
    if (real.u_leq(n - i, z - 1, n - 1)) --z;
    if (trace) {
      out.s_steps.push_back(s);
      out.y_steps.push_back(y);
      out.z_steps.push_back(z);
    }
  }
  out.s = s;
  out.y = y;
  out.z = z;
  return out;
}

std::vector<RoundOutcome> simulate_round_sweep(CouplingRealization& real, long n_lo,
                                               long n_hi, bool trace) {
  if (n_lo < 2 || n_hi < n_lo) throw std::domain_error("simulate_round_sweep: bad range");
  std::vector<RoundOutcome> out;
  out.reserve(n_hi - n_lo + 1);
  for (long n = n_lo; n <= n_hi; ++n) out.push_back(simulate_round(real, n, trace));
  return out;
}

MultiRoundPlan::MultiRoundPlan(uint64_t seed, std::function<int64_t(long)> copy_index_of_start)
    : seed_(seed), k_of_(std::move(copy_index_of_start)) {}

CouplingRealization& MultiRoundPlan::copy(int64_t index) {
  auto it = copies_.find(index);
  if (it == copies_.end())
    it = copies_.emplace(index, CouplingRealization(seed_, index)).first;
  return it->second;
}

std::vector<long> simulate_multiround(MultiRoundPlan& plan, long start, long max_rounds) {
  if (start < 0) throw std::domain_error("simulate_multiround: start < 0");
  std::vector<long> traj{start};
  int64_t k = plan.copy_index_of_start(start);
  long x = start;
  for (long i = 0; i < max_rounds; ++i) {
    if (x <= 1) break;  // no survivors, or a single survivor with no one to shoot
    x = simulate_round(plan.copy(k - i), x).s;
    traj.push_back(x);
  }
  return traj;
}

long count_sweep_violations(uint64_t seed, long realizations, long n_lo, long n_hi,
                            unsigned threads) {
  if (n_lo < 2 || n_hi < n_lo) throw std::domain_error("count_sweep_violations: bad range");
  std::atomic<long> violations(0);
  parallel_for(
      0, realizations,
      [&](int64_t rep) {
        CouplingRealization real(chain(chain(seed, kTagTrial), static_cast<uint64_t>(rep)));
        long bad = 0;
        RoundOutcome prev;
        for (long n = n_lo; n <= n_hi; ++n) {
          RoundOutcome cur = simulate_round(real, n, /*trace=*/true);
          for (long i = 0; i <= n; ++i) {
            long s = cur.s_steps[i], y = cur.y_steps[i], z = cur.z_steps[i];
            if (!(y <= s && s <= z)) ++bad;
            if (!(y <= z && z <= y + 1)) ++bad;
          }
          if (n > n_lo) {
            // prev has n-1 steps: compare shifted indices
            for (long i = 0; i <= n - 1; ++i) {
              long yp = prev.y_steps[i], yc = cur.y_steps[i + 1];
              long zp = prev.z_steps[i], zc = cur.z_steps[i + 1];
              if (!(yp <= yc && yc <= yp + 1)) ++bad;
              if (!(zp <= zc && zc <= zp + 1)) ++bad;
            }
          }
          prev = std::move(cur);
        }
        if (bad) violations.fetch_add(bad, std::memory_order_relaxed);
      },
      threads);
  return violations.load();
}

CollisionReport collision_experiment(long a, long b, long trials, uint64_t seed,
                                     unsigned threads) {
  if (a < 2 || b < a || 4 * b > 5 * a)
    throw std::domain_error("collision_experiment: need 2 <= a <= b <= (5/4)a");
  if (trials < 1) throw std::domain_error("collision_experiment: trials < 1");
  CollisionReport rep;
  rep.a = a;
  rep.b = b;
  rep.trials = trials;
  std::atomic<long> hits(0);
  parallel_for(
      0, trials,
      [&](int64_t t) {
        CouplingRealization real(chain(chain(seed, kTagTrial), static_cast<uint64_t>(t)));
        long sa = simulate_round(real, a).s;
        long sb = a == b ? sa : simulate_round(real, b).s;
        if (sa == sb) hits.fetch_add(1, std::memory_order_relaxed);
      },
      threads);
  rep.successes = hits.load();
  rep.frequency = Rational(rep.successes) / Rational(trials);
  Enclosure bound = exp_enclosure(Rational(-7 * (b - a)), width_target(20));
  rep.bound_lo = bound.lo();
  Rational var_hi = bound.hi() * (Rational(1) - bound.lo()) / Rational(trials);
  if (var_hi < 0) var_hi = 0;
  Enclosure sigma = sqrt_enclosure(var_hi, width_target(20));
  rep.three_sigma = 3 * sigma.hi();
  rep.pass = rep.frequency >= rep.bound_lo - rep.three_sigma;
  return rep;
}

}  // namespace roulette
