#include "roulette/pmf.hpp"

#include <stdexcept>

namespace roulette {

Pmf::Pmf(std::map<long, Rational> mass) : mass_(std::move(mass)) {
  for (auto it = mass_.begin(); it != mass_.end();) {
    if (it->second == 0)
      it = mass_.erase(it);
    else
      ++it;
  }
  validate();
}

Pmf Pmf::from_numerators(const std::vector<std::pair<long, Integer>>& nums,
                         const Integer& denom) {
  if (denom <= 0) throw std::domain_error("pmf: nonpositive denominator");
  std::map<long, Rational> m;
  for (const auto& [outcome, num] : nums) {
    if (num == 0) continue;
    m[outcome] += Rational(num) / Rational(denom);
  }
  return Pmf(std::move(m));
}

void Pmf::validate() const {
  Rational total(0);
  for (const auto& [outcome, p] : mass_) {
    if (p < 0) throw std::domain_error("pmf: negative mass");
    total += p;
  }
  if (total != 1) throw std::domain_error("pmf: masses do not sum to 1");
}

std::vector<long> Pmf::support() const {
  std::vector<long> s;
  s.reserve(mass_.size());
  for (const auto& [outcome, p] : mass_) s.push_back(outcome);
  return s;
}

Rational Pmf::at(long outcome) const {
  auto it = mass_.find(outcome);
  return it == mass_.end() ? Rational(0) : it->second;
}

long Pmf::min_outcome() const {
  if (mass_.empty()) throw std::logic_error("pmf: empty");
  return mass_.begin()->first;
}

long Pmf::max_outcome() const {
  if (mass_.empty()) throw std::logic_error("pmf: empty");
  return mass_.rbegin()->first;
}

Rational Pmf::tail_at_least(long k) const {
  Rational s(0);
  for (auto it = mass_.lower_bound(k); it != mass_.end(); ++it) s += it->second;
  return s;
}

Rational Pmf::tail_at_most(long k) const {
  Rational s(0);
  for (const auto& [outcome, p] : mass_) {
    if (outcome > k) break;
    s += p;
  }
  return s;
}

Rational Pmf::mean() const {
  Rational s(0);
  for (const auto& [outcome, p] : mass_) s += Rational(outcome) * p;
  return s;
}

Pmf Pmf::shifted(long shift) const {
  std::map<long, Rational> m;
  for (const auto& [outcome, p] : mass_) m[outcome + shift] = p;
  return Pmf(std::move(m));
}

void Pmf::write_csv(std::ostream& os) const {
  os << "outcome,numerator,denominator\n";
  for (const auto& [outcome, p] : mass_)
    os << outcome << "," << p.get_num().get_str() << "," << p.get_den().get_str() << "\n";
}

void Pmf::write_decimal_csv(std::ostream& os, int digits, Round dir) const {
  os << "outcome,decimal,rounding\n";
  for (const auto& [outcome, p] : mass_)
    os << outcome << "," << decimal_string_annotated(p, digits, dir) << "\n";
}

}  // namespace roulette
