// SPDX-License-Identifier: Apache-2.0
#include "callanat/callgraph.hpp"

#include <algorithm>
#include <map>

#include "callanat/scc.hpp"

namespace callanat {

namespace {

Cost cost_at(const CostVector& v, std::size_t i) {
  return i < v.size() ? v[i] : 0;
}

}  // namespace

const FunctionNode* CallGraph::find(const FunctionKey& key) const {
  for (const auto& node : nodes)
    if (node.key == key) return &node;
  return nullptr;
}

std::vector<std::vector<std::size_t>> CallGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  std::map<FunctionKey, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i].key, i);
  for (const auto& edge : edges)
    adj[index.at(edge.caller)].push_back(index.at(edge.callee));
  for (auto& out : adj) std::sort(out.begin(), out.end());
  return adj;
}

CallGraph build_graph(const Profile& profile) {
  CallGraph graph;
  graph.events = profile.events;

  const auto order = profile.record_order();
  std::map<FunctionKey, std::size_t> index;
  graph.nodes.reserve(order.size());
  for (const auto* key : order) {
    const auto& rec = profile.functions.at(*key);
    FunctionNode node;
    node.key = *key;
    node.self = padded(rec.self, profile.events.size());
    node.inclusive = node.self;
    node.first_record_index = rec.first_record_index;
    index.emplace(*key, graph.nodes.size());
    graph.nodes.push_back(std::move(node));
  }

  // merge parallel records per (caller, callee)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index;
  for (const auto* key : order) {
    const auto caller = index.at(*key);
    for (const auto& call : profile.functions.at(*key).calls) {
      const auto callee = index.at(call.callee);
      auto [it, inserted] =
          edge_index.try_emplace({caller, callee}, graph.edges.size());
      if (inserted)
        graph.edges.push_back(CallEdge{*key, call.callee, 0,
                                       CostVector(profile.events.size(), 0)});
      auto& edge = graph.edges[it->second];
      edge.count += call.count;
      accumulate(edge.cost, padded(call.cost, profile.events.size()));
    }
  }
  std::sort(graph.edges.begin(), graph.edges.end(),
            [&](const CallEdge& a, const CallEdge& b) {
              return std::pair(index.at(a.caller), index.at(a.callee)) <
                     std::pair(index.at(b.caller), index.at(b.callee));
            });

  for (const auto& edge : graph.edges)
    accumulate(graph.nodes[index.at(edge.caller)].inclusive, edge.cost);

  if (profile.summary) {
    graph.total = padded(*profile.summary, profile.events.size());
  } else {
    graph.total = profile.total_self();
  }

  const auto components = callanat::strongly_connected_components(graph.adjacency());
  std::vector<std::size_t> by_lowest_member(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) by_lowest_member[c] = c;
  std::sort(by_lowest_member.begin(), by_lowest_member.end(),
            [&](std::size_t a, std::size_t b) {
              return components[a].front() < components[b].front();
            });
  for (std::size_t rank = 0; rank < by_lowest_member.size(); ++rank)
    for (const auto v : components[by_lowest_member[rank]])
      graph.nodes[v].scc_id = rank;

  return graph;
}

Share percent_of_total(const CallGraph& graph, const FunctionKey& key,
                       CostKind kind, std::size_t event_index) {
  if (event_index >= graph.events.size())
    throw std::out_of_range("event index out of range");
  const auto* node = graph.find(key);
  if (node == nullptr) throw UnknownFunction("unknown function: " + key.name);
  const auto& costs = kind == CostKind::Self ? node->self : node->inclusive;
  return Share::of(cost_at(costs, event_index), cost_at(graph.total, event_index));
}

std::vector<FunctionKey> entry_points(const CallGraph& graph) {
  if (graph.nodes.empty()) throw EmptyGraph("graph has no nodes");

  std::vector<std::size_t> in_degree(graph.nodes.size(), 0);
  std::map<FunctionKey, std::size_t> index;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i)
    index.emplace(graph.nodes[i].key, i);
  for (const auto& edge : graph.edges) ++in_degree[index.at(edge.callee)];

  auto better = [&](std::size_t a, std::size_t b) {
    const auto ca = cost_at(graph.nodes[a].inclusive, 0);
    const auto cb = cost_at(graph.nodes[b].inclusive, 0);
    if (ca != cb) return ca > cb;
    return graph.nodes[a].first_record_index < graph.nodes[b].first_record_index;
  };

  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i)
    if (in_degree[i] == 0) roots.push_back(i);

  if (roots.empty()) {
    // fully cyclic: fall back to the most expensive node
    std::size_t best = 0;
    for (std::size_t i = 1; i < graph.nodes.size(); ++i)
      if (better(i, best)) best = i;
    return {graph.nodes[best].key};
  }

  std::sort(roots.begin(), roots.end(), better);
  std::vector<FunctionKey> keys;
  keys.reserve(roots.size());
  for (const auto i : roots) keys.push_back(graph.nodes[i].key);
  return keys;
}

std::vector<std::vector<FunctionKey>> strongly_connected_components(
    const CallGraph& graph) {
  std::size_t n_components = 0;
  for (const auto& node : graph.nodes)
    n_components = std::max(n_components, node.scc_id + 1);
  if (graph.nodes.empty()) return {};

  std::vector<std::vector<FunctionKey>> result(n_components);
  for (const auto& node : graph.nodes) result[node.scc_id].push_back(node.key);
  return result;
}

}  // namespace callanat
