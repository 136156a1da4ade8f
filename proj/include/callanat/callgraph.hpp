// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "callanat/profile.hpp"

namespace callanat {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownFunction : public GraphError {
 public:
  using GraphError::GraphError;
};

class EmptyGraph : public GraphError {
 public:
  using GraphError::GraphError;
};

enum class CostKind { Self, Inclusive };

struct FunctionNode {
  FunctionKey key;
  CostVector self;
  // self + per-call cost of all outgoing edges, as attributed by the profile.
  // Raw value: recursion can push it above the graph total; percentage
  // accessors cap at 100%.
  CostVector inclusive;
  std::size_t first_record_index = 0;
  std::size_t scc_id = 0;

  friend bool operator==(const FunctionNode&, const FunctionNode&) = default;
};

struct CallEdge {
  FunctionKey caller;
  FunctionKey callee;
  std::uint64_t count = 0;
  CostVector cost;

  friend bool operator==(const CallEdge&, const CallEdge&) = default;
};

// Weighted directed call graph. Nodes are ordered by first_record_index,
// edges by (caller, callee) in that order. Immutable by convention after
// build_graph; all operations below are pure.
struct CallGraph {
  EventSpec events;
  std::vector<FunctionNode> nodes;
  std::vector<CallEdge> edges;
  CostVector total;  // summary when present, else the sum of self costs

  const FunctionNode* find(const FunctionKey& key) const;

  // node-index adjacency, callee indices ascending
  std::vector<std::vector<std::size_t>> adjacency() const;

  friend bool operator==(const CallGraph&, const CallGraph&) = default;
};

// One node per function in the profile (callees that never run their own
// cost block keep a zero self cost); parallel call records merge per
// (caller, callee) pair. Inclusive costs come straight from the file's
// per-call attribution, not from propagation, so profiler-resolved recursion
// is not double counted.
CallGraph build_graph(const Profile& profile);

// cost / total for one event, exact and capped at 1. Zero when total is 0.
Share percent_of_total(const CallGraph& graph, const FunctionKey& key,
                       CostKind kind, std::size_t event_index);

// Zero in-degree nodes ordered by (descending inclusive cost of event 0,
// then first_record_index). A fully cyclic graph yields the single node with
// maximum inclusive cost.
std::vector<FunctionKey> entry_points(const CallGraph& graph);

// Exact SCC partition with deterministic ids: components ordered by the
// lowest first_record_index they contain.
std::vector<std::vector<FunctionKey>> strongly_connected_components(
    const CallGraph& graph);

}  // namespace callanat
