// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "callanat/emit.hpp"

namespace callanat {

namespace {

Cost cost_at(const CostVector& v, std::size_t i) {
  return i < v.size() ? v[i] : 0;
}

std::string escaped(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// BFS hop counts from `root`; SIZE_MAX marks unreachable.
std::vector<std::size_t> hop_depths(std::size_t n,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                    std::size_t root) {
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (const auto& [a, b] : edges) adjacency[a].push_back(b);
  std::vector<std::size_t> depth(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> queue{root};
  depth[root] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = queue[head];
    for (const auto w : adjacency[v]) {
      if (depth[w] != std::numeric_limits<std::size_t>::max()) continue;
      depth[w] = depth[v] + 1;
      queue.push_back(w);
    }
  }
  return depth;
}

struct DotNode {
  std::string name;
  Share inclusive;
  Share self;
  std::uint64_t calls_in = 0;
  std::string category;
};

std::string render(const std::vector<DotNode>& nodes,
                   const std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>>& edges,
                   const std::vector<bool>& keep, const DotOptions& options) {
  std::ostringstream out;
  out << "digraph callgraph {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!keep[i]) continue;
    const auto& node = nodes[i];
    out << "  n" << i << " [label=\"" << escaped(node.name) << "\\n";
    // costless graphs (directory aggregation) skip the share line
    if (node.inclusive.den != 0 || node.self.den != 0)
      out << node.inclusive.percent() << "% inc, " << node.self.percent()
          << "% self\\n";
    out << node.calls_in << " calls in\"";
    const auto color = options.color_map.find(node.category);
    if (!node.category.empty() && color != options.color_map.end())
      out << ", style=filled, fillcolor=\"" << escaped(color->second) << "\"";
    out << "];\n";
  }
  for (const auto& [a, b, count] : edges) {
    if (!keep[a] || !keep[b]) continue;
    out << "  n" << a << " -> n" << b << " [label=\"" << count << "\xC3\x97\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::map<std::string, std::string> default_color_map() {
  return {
      {"initialization", "orange"},
      {"class-registration", "red"},
      {"graphics", "blue"},
      {"window-system", "gray"},
  };
}

std::string emit_dot(const CallGraph& graph, const DotOptions& options) {
  std::vector<DotNode> nodes(graph.nodes.size());
  std::map<FunctionKey, std::size_t> index;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i)
    index.emplace(graph.nodes[i].key, i);

  const auto total = cost_at(graph.total, options.event_index);
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& node = graph.nodes[i];
    nodes[i].name = node.key.name;
    nodes[i].inclusive = Share::of(cost_at(node.inclusive, options.event_index), total);
    nodes[i].self = Share::of(cost_at(node.self, options.event_index), total);
  }
  std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>> edges;
  std::vector<std::pair<std::size_t, std::size_t>> plain_edges;
  for (const auto& edge : graph.edges) {
    const auto a = index.at(edge.caller);
    const auto b = index.at(edge.callee);
    edges.emplace_back(a, b, edge.count);
    plain_edges.emplace_back(a, b);
    nodes[b].calls_in += edge.count;
  }

  std::vector<bool> keep(nodes.size(), true);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    keep[i] = !(nodes[i].inclusive.value() < options.threshold);
  if (options.max_depth && !graph.nodes.empty()) {
    const auto root = index.at(entry_points(graph).front());
    const auto depth = hop_depths(nodes.size(), plain_edges, root);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (depth[i] > *options.max_depth) keep[i] = false;
  }
  return render(nodes, edges, keep, options);
}

std::string emit_dot(const AbstractGraph& graph, const DotOptions& options) {
  std::vector<DotNode> nodes(graph.nodes.size());
  const auto total = cost_at(graph.total, options.event_index);
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& node = graph.nodes[i];
    nodes[i].name = node.label;
    nodes[i].inclusive = Share::of(cost_at(node.inclusive, options.event_index), total);
    nodes[i].self = Share::of(cost_at(node.self, options.event_index), total);
    nodes[i].category = node.category;
  }
  std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>> edges;
  std::vector<std::pair<std::size_t, std::size_t>> plain_edges;
  for (const auto& edge : graph.edges) {
    edges.emplace_back(edge.source, edge.target, edge.count);
    plain_edges.emplace_back(edge.source, edge.target);
    nodes[edge.target].calls_in += edge.count;
  }

  std::vector<bool> keep(nodes.size(), true);
  const bool costless = total == 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    keep[i] = costless || !(nodes[i].inclusive.value() < options.threshold);
  if (options.max_depth && !graph.nodes.empty()) {
    // abstract graphs carry no entry point; the earliest record serves
    std::size_t root = 0;
    for (std::size_t i = 1; i < graph.nodes.size(); ++i)
      if (graph.nodes[i].first_record_index < graph.nodes[root].first_record_index)
        root = i;
    const auto depth = hop_depths(nodes.size(), plain_edges, root);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (depth[i] > *options.max_depth) keep[i] = false;
  }
  return render(nodes, edges, keep, options);
}

std::string emit_dot(const IncludeGraph& graph) {
  std::ostringstream out;
  out << "digraph includes {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < graph.files.size(); ++i) {
    index.emplace(graph.files[i], i);
    out << "  n" << i << " [label=\"" << escaped(graph.files[i]) << "\"];\n";
  }
  std::size_t next = graph.files.size();
  std::map<std::string, std::size_t> frontier;
  for (const auto& edge : graph.edges) {
    if (edge.resolved) continue;
    if (frontier.try_emplace(edge.included, next).second) {
      out << "  n" << next << " [label=\"" << escaped(edge.included)
          << "\", style=dashed];\n";
      ++next;
    }
  }
  for (const auto& edge : graph.edges) {
    const auto target = edge.resolved ? index.at(edge.included)
                                      : frontier.at(edge.included);
    out << "  n" << index.at(edge.includer) << " -> n" << target;
    if (edge.kind == IncludeKind::Angled) out << " [style=dotted]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string emit_top(const CallGraph& graph, std::size_t n, CostKind kind,
                     std::size_t event_index) {
  std::vector<std::size_t> order(graph.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto cost_of = [&](std::size_t i) {
    const auto& node = graph.nodes[i];
    return cost_at(kind == CostKind::Self ? node.self : node.inclusive, event_index);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cost_of(a) != cost_of(b)) return cost_of(a) > cost_of(b);
    return graph.nodes[a].first_record_index < graph.nodes[b].first_record_index;
  });
  if (order.size() > n) order.resize(n);

  std::map<FunctionKey, std::uint64_t> calls_in;
  for (const auto& edge : graph.edges) calls_in[edge.callee] += edge.count;

  const auto total = cost_at(graph.total, event_index);
  std::ostringstream out;
  out << "  rank          cost       %  calls-in  name\n";
  std::size_t rank = 1;
  for (const auto i : order) {
    const auto& node = graph.nodes[i];
    const auto share = Share::of(cost_of(i), total);
    const auto in_it = calls_in.find(node.key);
    out << std::setw(6) << rank++ << std::setw(14) << cost_of(i) << std::setw(8)
        << share.percent() << std::setw(10)
        << (in_it == calls_in.end() ? 0 : in_it->second) << "  " << node.key.name
        << '\n';
  }
  return out.str();
}

}  // namespace callanat
