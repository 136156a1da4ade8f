// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace callanat {

// One countable cost unit per declared event ("Ir", "Dr", ...).
using Cost = std::uint64_t;
using CostVector = std::vector<Cost>;

// Derived event from the profile header ("event: CEst = Ir + 10 Bm").
// Formulas are kept verbatim and never evaluated.
struct DerivedEvent {
  std::string name;
  std::string formula;

  friend bool operator==(const DerivedEvent&, const DerivedEvent&) = default;
};

// Cost-vector layout declared by the `events:` header line.
struct EventSpec {
  std::vector<std::string> names;
  std::vector<DerivedEvent> derived;

  std::size_t size() const { return names.size(); }

  friend bool operator==(const EventSpec&, const EventSpec&) = default;
};

// into[i] += add[i], growing `into` as needed.
void accumulate(CostVector& into, const CostVector& add);

// v resized to n entries; missing trailing values are zero.
CostVector padded(CostVector v, std::size_t n);

// Exact share num/den clamped to [0, 1]. den == 0 encodes "no total" and
// behaves as zero. Comparisons cross-multiply in 128-bit, so they are exact.
struct Share {
  Cost num = 0;
  Cost den = 0;

  static Share of(Cost cost, Cost total);

  double value() const;

  // Percentage with two decimals, rounded half-up: Share{400,420} -> "95.24".
  std::string percent() const;

  friend bool operator==(const Share& a, const Share& b);
  friend bool operator<(const Share& a, const Share& b);
};

}  // namespace callanat
