// SPDX-License-Identifier: Apache-2.0
#include "callanat/cost.hpp"

#include <algorithm>

namespace callanat {

void accumulate(CostVector& into, const CostVector& add) {
  if (into.size() < add.size()) into.resize(add.size(), 0);
  for (std::size_t i = 0; i < add.size(); ++i) into[i] += add[i];
}

CostVector padded(CostVector v, std::size_t n) {
  v.resize(n, 0);
  return v;
}

Share Share::of(Cost cost, Cost total) {
  if (total == 0) return Share{0, 0};
  return Share{std::min(cost, total), total};
}

double Share::value() const {
  if (den == 0) return 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string Share::percent() const {
  // Basis points, half-up: keeps rendering independent of FP rounding.
  unsigned long long bp = 0;
  if (den != 0) {
    const auto wide = static_cast<unsigned __int128>(num) * 10000u;
    bp = static_cast<unsigned long long>((wide + den / 2) / den);
  }
  std::string out = std::to_string(bp / 100);
  out += '.';
  const auto frac = bp % 100;
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

bool operator==(const Share& a, const Share& b) {
  const unsigned __int128 lhs =
      static_cast<unsigned __int128>(a.num) * (b.den == 0 ? 1 : b.den);
  const unsigned __int128 rhs =
      static_cast<unsigned __int128>(b.num) * (a.den == 0 ? 1 : a.den);
  return (a.den == 0 ? 0 : lhs) == (b.den == 0 ? 0 : rhs);
}

bool operator<(const Share& a, const Share& b) {
  const unsigned __int128 an = a.den == 0 ? 0 : a.num;
  const unsigned __int128 bn = b.den == 0 ? 0 : b.num;
  const unsigned __int128 ad = a.den == 0 ? 1 : a.den;
  const unsigned __int128 bd = b.den == 0 ? 1 : b.den;
  return an * bd < bn * ad;
}

}  // namespace callanat
