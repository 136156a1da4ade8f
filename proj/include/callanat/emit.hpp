// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

#include "callanat/comparison.hpp"
#include "callanat/include_graph.hpp"

namespace callanat {

// Category fills matching the scenario palette.
std::map<std::string, std::string> default_color_map();

struct DotOptions {
  // minimum inclusive share of total for node inclusion
  double threshold = 0.01;
  // hops from the first entry point; unlimited when absent
  std::optional<std::size_t> max_depth;
  std::map<std::string, std::string> color_map = default_color_map();
  std::size_t event_index = 0;
};

// Valid DOT digraph, deterministically ordered. Node labels carry the name,
// inclusive and self shares and incoming call count; edge labels the call
// count. Categorized nodes are filled with their category color.
std::string emit_dot(const CallGraph& graph, const DotOptions& options = {});
std::string emit_dot(const AbstractGraph& graph, const DotOptions& options = {});
std::string emit_dot(const IncludeGraph& graph);

// Stable, versioned JSON (schema_version 1). Deterministic key order, exact
// integers; graphs round-trip losslessly through the matching from_json.
std::string emit_json(const Profile& profile);
std::string emit_json(const CallGraph& graph);
std::string emit_json(const AbstractGraph& graph);
std::string emit_json(const IncludeGraph& graph);
std::string emit_json(const ComparisonReport& report);
std::string emit_json(const ReferenceArchitecture& reference,
                      const std::vector<MatchResult>& results,
                      double fuzzy_threshold);

Profile profile_from_json(const std::string& text);
CallGraph callgraph_from_json(const std::string& text);
AbstractGraph abstract_from_json(const std::string& text);
IncludeGraph include_graph_from_json(const std::string& text);

// Top-n functions by self or inclusive cost: rank, cost, capped % of total,
// incoming calls, name. Ties break on first_record_index.
std::string emit_top(const CallGraph& graph, std::size_t n, CostKind kind,
                     std::size_t event_index);

// Human-readable renderings used by the CLI's text format.
std::string emit_text(const ReferenceArchitecture& reference,
                      const std::vector<MatchResult>& results);
std::string emit_text(const ComparisonReport& report);

}  // namespace callanat
