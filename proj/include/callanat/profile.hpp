// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "callanat/cost.hpp"

namespace callanat {

// Identity of a profiled function: ELF object, source file, symbol name.
// Object and file may be empty (library frontier); equality is exact on the
// whole triple, so two same-named functions in different files are distinct.
struct FunctionKey {
  std::string object;
  std::string file;
  std::string name;

  friend auto operator<=>(const FunctionKey&, const FunctionKey&) = default;
};

// One `calls=` record: `count` calls whose summed inclusive cost is `cost`.
struct CallRecord {
  FunctionKey callee;
  std::uint64_t count = 0;
  CostVector cost;

  friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

struct FunctionRecord {
  CostVector self;
  std::vector<CallRecord> calls;
  // Rank of first appearance in the file (fn= or cfn=), dense from 0.
  std::size_t first_record_index = 0;

  friend bool operator==(const FunctionRecord&, const FunctionRecord&) = default;
};

// Faithful in-memory model of one parsed Callgrind file. Immutable by
// convention after parsing; safe to share across threads.
struct Profile {
  std::map<std::string, std::string> header;
  EventSpec events;
  std::map<FunctionKey, FunctionRecord> functions;
  std::optional<CostVector> summary;

  // Keys ordered by first_record_index.
  std::vector<const FunctionKey*> record_order() const;

  // Per-event sum of all self costs.
  CostVector total_self() const;

  friend bool operator==(const Profile&, const Profile&) = default;
};

}  // namespace callanat
