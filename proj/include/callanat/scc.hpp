// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace callanat {

// Tarjan's algorithm over an adjacency list, iterative so deep graphs cannot
// overflow the call stack. Components come back in discovery order of their
// lowest-index root; vertices inside a component are sorted ascending.
std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& adjacency);

}  // namespace callanat
