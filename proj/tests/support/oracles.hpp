// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <vector>

namespace callanat::testing {

// Brute-force SCC partition via transitive closure: u and v share a
// component iff u reaches v and v reaches u.
inline std::vector<std::set<std::size_t>> closure_sccs(
    const std::vector<std::vector<std::size_t>>& adjacency) {
  const auto n = adjacency.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) {
    reach[v][v] = true;
    for (const auto w : adjacency[v]) reach[v][w] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;

  std::vector<bool> assigned(n, false);
  std::vector<std::set<std::size_t>> components;
  for (std::size_t v = 0; v < n; ++v) {
    if (assigned[v]) continue;
    std::set<std::size_t> component;
    for (std::size_t w = v; w < n; ++w)
      if (reach[v][w] && reach[w][v]) {
        component.insert(w);
        assigned[w] = true;
      }
    components.push_back(std::move(component));
  }
  return components;
}

}  // namespace callanat::testing
