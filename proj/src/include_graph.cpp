// SPDX-License-Identifier: Apache-2.0
#include "callanat/include_graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "callanat/scc.hpp"

namespace callanat {

namespace fs = std::filesystem;

namespace {

// // and /* */ stripping; string literals are not modelled.
std::string strip_comments(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool in_block = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (in_block) {
      if (text.compare(i, 2, "*/") == 0) {
        in_block = false;
        ++i;
      } else if (text[i] == '\n') {
        out += '\n';
      }
      continue;
    }
    if (text.compare(i, 2, "/*") == 0) {
      in_block = true;
      out += ' ';
      ++i;
      continue;
    }
    if (text.compare(i, 2, "//") == 0) {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i < text.size()) out += '\n';
      continue;
    }
    out += text[i];
  }
  return out;
}

// `#include "name"` / `#include <name>` with optional whitespace
bool match_include(std::string_view line, std::string& name, IncludeKind& kind) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  };
  skip_ws();
  if (i >= line.size() || line[i] != '#') return false;
  ++i;
  skip_ws();
  if (line.compare(i, 7, "include") != 0) return false;
  i += 7;
  skip_ws();
  if (i >= line.size()) return false;
  char close;
  if (line[i] == '"') {
    close = '"';
    kind = IncludeKind::Quoted;
  } else if (line[i] == '<') {
    close = '>';
    kind = IncludeKind::Angled;
  } else {
    return false;
  }
  const auto end = line.find(close, i + 1);
  if (end == std::string_view::npos || end == i + 1) return false;
  name = std::string(line.substr(i + 1, end - i - 1));
  return true;
}

std::string normalized(const fs::path& p) {
  return p.lexically_normal().generic_string();
}

}  // namespace

std::string to_string(IncludeKind kind) {
  return kind == IncludeKind::Quoted ? "quoted" : "angled";
}

IncludeGraph scan_includes(const fs::path& root, const ScanOptions& options) {
  IncludeGraph graph;
  graph.scan_root = root.generic_string();

  std::set<std::string> extensions(options.extensions.begin(),
                                   options.extensions.end());
  std::vector<std::string> files;
  if (fs::exists(root)) {
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (!entry.is_regular_file()) continue;
      if (!extensions.count(entry.path().extension().string())) continue;
      files.push_back(normalized(entry.path().lexically_relative(root)));
    }
  }
  std::sort(files.begin(), files.end());
  graph.files = files;
  const std::set<std::string> file_set(files.begin(), files.end());

  std::vector<std::string> include_dirs;
  for (const auto& dir : options.include_dirs) {
    fs::path p(dir);
    if (p.is_absolute()) {
      const auto rel = p.lexically_relative(root);
      if (rel.empty() || rel.native().starts_with("..")) continue;
      p = rel;
    }
    include_dirs.push_back(normalized(p));
  }

  auto resolve = [&](const std::string& includer, const std::string& name,
                     IncludeKind kind) -> std::pair<std::string, bool> {
    if (kind == IncludeKind::Quoted) {
      const auto based =
          normalized(fs::path(includer).parent_path() / name);
      if (!based.starts_with("..") && file_set.count(based)) return {based, true};
    }
    for (const auto& dir : include_dirs) {
      const auto candidate =
          normalized(dir == "." ? fs::path(name) : fs::path(dir) / name);
      if (!candidate.starts_with("..") && file_set.count(candidate))
        return {candidate, true};
    }
    return {name, false};
  };

  std::set<IncludeEdge> edges;
  for (const auto& file : files) {
    std::ifstream in(root / fs::path(file), std::ios::binary);
    if (!in) {
      graph.issues.push_back(ScanIssue{file, "cannot open file"});
      continue;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
      graph.issues.push_back(ScanIssue{file, "read failed"});
      continue;
    }
    std::istringstream stripped(strip_comments(buffer.str()));
    std::string line;
    while (std::getline(stripped, line)) {
      std::string name;
      IncludeKind kind{};
      if (!match_include(line, name, kind)) continue;
      const auto [included, resolved] = resolve(file, name, kind);
      edges.insert(IncludeEdge{file, included, kind, resolved});
    }
  }
  graph.edges.assign(edges.begin(), edges.end());
  return graph;
}

namespace {

std::string directory_group(const std::string& path, std::size_t depth) {
  std::vector<std::string> parts;
  for (const auto& component : fs::path(path))
    parts.push_back(component.generic_string());
  if (parts.size() <= 1) return ".";
  const auto take = std::min(depth, parts.size() - 1);
  if (take == 0) return ".";
  std::string group;
  for (std::size_t i = 0; i < take; ++i) {
    if (!group.empty()) group += '/';
    group += parts[i];
  }
  return group;
}

}  // namespace

AbstractGraph aggregate_dirs(const IncludeGraph& graph, std::size_t depth,
                             bool include_unresolved) {
  if (depth < 1) throw std::invalid_argument("aggregate_dirs: depth must be >= 1");

  AbstractGraph out;
  out.level = GroupLevel::File;

  std::map<std::string, std::set<std::string>> groups;
  for (const auto& file : graph.files)
    groups[directory_group(file, depth)].insert(file);
  if (include_unresolved) {
    for (const auto& edge : graph.edges)
      if (!edge.resolved) groups["<external>"].insert(edge.included);
  }

  std::map<std::string, std::size_t> index;
  for (const auto& [label, members] : groups) {
    AbstractNode node;
    node.label = label;
    node.first_record_index = out.nodes.size();
    for (const auto& member : members)
      node.members.push_back(FunctionKey{"", member, member});
    index.emplace(label, out.nodes.size());
    out.nodes.push_back(std::move(node));
  }

  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> counts;
  for (const auto& edge : graph.edges) {
    if (!edge.resolved && !include_unresolved) continue;
    const auto source = index.at(directory_group(edge.includer, depth));
    const auto target = edge.resolved
                            ? index.at(directory_group(edge.included, depth))
                            : index.at("<external>");
    ++counts[{source, target}];
  }
  for (const auto& [pair, count] : counts)
    out.edges.push_back(AbstractEdge{pair.first, pair.second, count, {}});
  return out;
}

std::vector<std::vector<std::string>> find_cycles(const IncludeGraph& graph) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < graph.files.size(); ++i)
    index.emplace(graph.files[i], i);

  std::vector<std::vector<std::size_t>> adjacency(graph.files.size());
  for (const auto& edge : graph.edges) {
    if (!edge.resolved) continue;
    adjacency[index.at(edge.includer)].push_back(index.at(edge.included));
  }
  for (auto& out : adjacency) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::string>> cycles;
  for (const auto& component : strongly_connected_components(adjacency)) {
    if (component.size() < 2) continue;
    const std::set<std::size_t> in_component(component.begin(), component.end());
    const auto start = component.front();  // members sorted: lexicographic min

    // BFS distances from start inside the component
    std::vector<std::size_t> parent(graph.files.size(), kUnset);
    std::vector<std::size_t> dist(graph.files.size(), kUnset);
    std::vector<std::size_t> queue{start};
    dist[start] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto v = queue[head];
      for (const auto w : adjacency[v]) {
        if (!in_component.count(w) || dist[w] != kUnset) continue;
        dist[w] = dist[v] + 1;
        parent[w] = v;
        queue.push_back(w);
      }
    }

    // shortest cycle through start: closest predecessor of start
    std::size_t closer = kUnset;
    for (const auto u : component) {
      if (u == start || dist[u] == kUnset) continue;
      if (!std::binary_search(adjacency[u].begin(), adjacency[u].end(), start))
        continue;
      if (closer == kUnset || dist[u] < dist[closer]) closer = u;
    }
    if (closer == kUnset) continue;  // unreachable for a well-formed SCC

    std::vector<std::string> cycle;
    for (auto v = closer; v != kUnset; v = parent[v])
      cycle.push_back(graph.files[v]);
    std::reverse(cycle.begin(), cycle.end());
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

}  // namespace callanat
