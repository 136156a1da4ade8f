// SPDX-License-Identifier: Apache-2.0
#include "callanat/profile.hpp"

#include <algorithm>

namespace callanat {

std::vector<const FunctionKey*> Profile::record_order() const {
  std::vector<const FunctionKey*> keys;
  keys.reserve(functions.size());
  for (const auto& [key, rec] : functions) keys.push_back(&key);
  std::sort(keys.begin(), keys.end(), [this](const auto* a, const auto* b) {
    return functions.at(*a).first_record_index <
           functions.at(*b).first_record_index;
  });
  return keys;
}

CostVector Profile::total_self() const {
  CostVector total(events.size(), 0);
  for (const auto& [key, rec] : functions) accumulate(total, rec.self);
  return total;
}

}  // namespace callanat
