// SPDX-License-Identifier: Apache-2.0
#include "callanat/abstract.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <set>

#include <nlohmann/json.hpp>

#include "callanat/symbols.hpp"

namespace callanat {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string group_label(const FunctionKey& key, GroupLevel level) {
  if (level == GroupLevel::File) return key.file.empty() ? "<unknown>" : key.file;
  const auto parts = parse_symbol(key.name);
  const auto scope = parts.scope_label();
  return scope.empty() ? "<free functions>" : scope;
}

}  // namespace

InvalidPattern::InvalidPattern(std::size_t rule_index, const std::string& what)
    : ConfigError(what), rule_index_(rule_index) {}

std::string to_string(GroupLevel level) {
  switch (level) {
    case GroupLevel::Function: return "function";
    case GroupLevel::Class: return "class";
    case GroupLevel::File: return "file";
    case GroupLevel::Category: return "category";
  }
  return "function";
}

GroupLevel group_level_from_string(const std::string& name) {
  if (name == "function") return GroupLevel::Function;
  if (name == "class") return GroupLevel::Class;
  if (name == "file") return GroupLevel::File;
  if (name == "category") return GroupLevel::Category;
  throw ConfigError("unknown aggregation level: " + name);
}

const AbstractNode* AbstractGraph::find(const std::string& label) const {
  for (const auto& node : nodes)
    if (node.label == label) return &node;
  return nullptr;
}

AbstractGraph aggregate(const CallGraph& graph, GroupLevel level) {
  if (level != GroupLevel::Class && level != GroupLevel::File)
    throw std::invalid_argument("aggregate: level must be class or file");

  AbstractGraph out;
  out.level = level;
  out.events = graph.events;
  out.total = graph.total;

  std::map<std::string, std::size_t> index;
  std::map<FunctionKey, std::size_t> member_group;
  for (const auto& node : graph.nodes) {
    const auto label = group_label(node.key, level);
    auto [it, inserted] = index.try_emplace(label, out.nodes.size());
    if (inserted) {
      AbstractNode group;
      group.label = label;
      group.self.assign(graph.events.size(), 0);
      group.inclusive.assign(graph.events.size(), 0);
      group.first_record_index = node.first_record_index;
      out.nodes.push_back(std::move(group));
    }
    auto& group = out.nodes[it->second];
    group.members.push_back(node.key);
    accumulate(group.self, node.self);
    group.first_record_index =
        std::min(group.first_record_index, node.first_record_index);
    member_group.emplace(node.key, it->second);
  }

  // keep node order deterministic: ascending first appearance
  std::vector<std::size_t> order(out.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.nodes[a].first_record_index < out.nodes[b].first_record_index;
  });
  std::vector<std::size_t> rank(out.nodes.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  {
    std::vector<AbstractNode> sorted;
    sorted.reserve(out.nodes.size());
    for (const auto i : order) sorted.push_back(std::move(out.nodes[i]));
    out.nodes = std::move(sorted);
  }
  for (auto& [key, group] : member_group) group = rank[group];
  for (auto& node : out.nodes) std::sort(node.members.begin(), node.members.end());

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index;
  for (const auto& edge : graph.edges) {
    const auto source = member_group.at(edge.caller);
    const auto target = member_group.at(edge.callee);
    auto [it, inserted] =
        edge_index.try_emplace({source, target}, out.edges.size());
    if (inserted)
      out.edges.push_back(
          AbstractEdge{source, target, 0, CostVector(graph.events.size(), 0)});
    auto& merged = out.edges[it->second];
    merged.count += edge.count;
    accumulate(merged.cost, edge.cost);
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const AbstractEdge& a, const AbstractEdge& b) {
              return std::pair(a.source, a.target) < std::pair(b.source, b.target);
            });

  for (auto& node : out.nodes) node.inclusive = node.self;
  for (const auto& edge : out.edges) {
    if (edge.source == edge.target) continue;
    accumulate(out.nodes[edge.source].inclusive, edge.cost);
  }
  return out;
}

std::vector<std::string> member_leaves(const AbstractNode& node) {
  std::set<std::string> leaves;
  for (const auto& member : node.members)
    leaves.insert(parse_symbol(member.name).leaf);
  return {leaves.begin(), leaves.end()};
}

CategoryRuleset default_ruleset() {
  return CategoryRuleset{{
      {"initialization", {"init", "setup", "start"}, false},
      {"class-registration", {"register"}, false},
      {"graphics", {"graphic", "render", "gl", "video", "sky", "theme"}, false},
      {"window-system", {"x11", "sdl", "window", "display"}, false},
  }};
}

CategoryRuleset load_ruleset(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("ruleset is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_array())
    throw ConfigError("ruleset must be an object with a \"rules\" array");

  CategoryRuleset out;
  for (const auto& entry : doc["rules"]) {
    if (!entry.is_object() || !entry.contains("category") ||
        !entry["category"].is_string() || !entry.contains("patterns") ||
        !entry["patterns"].is_array())
      throw ConfigError("each rule needs a category and a patterns array");
    CategoryRule rule;
    rule.category = entry["category"].get<std::string>();
    if (rule.category.empty()) throw ConfigError("rule category must not be empty");
    for (const auto& pattern : entry["patterns"]) {
      if (!pattern.is_string()) throw ConfigError("patterns must be strings");
      rule.patterns.push_back(pattern.get<std::string>());
    }
    if (rule.patterns.empty())
      throw ConfigError("rule '" + rule.category + "' has no patterns");
    rule.is_regex = entry.value("is_regex", false);
    out.rules.push_back(std::move(rule));
  }
  return out;
}

CategoryRuleset load_ruleset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open ruleset file: " + path);
  return load_ruleset(in);
}

AbstractGraph categorize(AbstractGraph graph, const CategoryRuleset& rules) {
  struct CompiledRule {
    const CategoryRule* rule;
    std::vector<std::regex> regexes;
    std::vector<std::string> needles;  // lowercased substrings
  };
  std::vector<CompiledRule> compiled;
  compiled.reserve(rules.rules.size());
  for (std::size_t i = 0; i < rules.rules.size(); ++i) {
    const auto& rule = rules.rules[i];
    CompiledRule c{&rule, {}, {}};
    if (rule.is_regex) {
      for (const auto& pattern : rule.patterns) {
        try {
          c.regexes.emplace_back(pattern, std::regex::ECMAScript | std::regex::icase);
        } catch (const std::regex_error& e) {
          throw InvalidPattern(i, "rule " + std::to_string(i) + " ('" +
                                      rule.category + "'): bad pattern '" +
                                      pattern + "': " + e.what());
        }
      }
    } else {
      for (const auto& pattern : rule.patterns) c.needles.push_back(lowercase(pattern));
    }
    compiled.push_back(std::move(c));
  }

  auto matches = [](const CompiledRule& rule, const std::string& text) {
    if (rule.rule->is_regex) {
      for (const auto& re : rule.regexes)
        if (std::regex_search(text, re)) return true;
      return false;
    }
    const auto haystack = lowercase(text);
    for (const auto& needle : rule.needles)
      if (haystack.find(needle) != std::string::npos) return true;
    return false;
  };

  for (auto& node : graph.nodes) {
    node.category = "uncategorized";
    const auto leaves = member_leaves(node);
    for (const auto& rule : compiled) {
      bool hit = matches(rule, node.label);
      for (std::size_t l = 0; !hit && l < leaves.size(); ++l)
        hit = matches(rule, leaves[l]);
      if (hit) {
        node.category = rule.rule->category;
        break;
      }
    }
  }
  return graph;
}

}  // namespace callanat
