// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "callanat/callgraph.hpp"

namespace callanat {

// Malformed configuration input (ruleset / reference / config files).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad regular expression in a category rule; carries the rule index.
class InvalidPattern : public ConfigError {
 public:
  InvalidPattern(std::size_t rule_index, const std::string& what);
  std::size_t rule_index() const { return rule_index_; }

 private:
  std::size_t rule_index_;
};

enum class GroupLevel { Function, Class, File, Category };

std::string to_string(GroupLevel level);
GroupLevel group_level_from_string(const std::string& name);

struct AbstractNode {
  std::string label;
  std::vector<FunctionKey> members;  // sorted, disjoint across nodes
  CostVector self;                   // sum of member self costs
  // group self plus cost of calls leaving the group; intra-group calls are
  // already covered by the group's own self sum
  CostVector inclusive;
  std::string category;  // empty until categorize() ran
  std::size_t first_record_index = 0;  // min over members

  friend bool operator==(const AbstractNode&, const AbstractNode&) = default;
};

struct AbstractEdge {
  std::size_t source = 0;  // indices into AbstractGraph::nodes
  std::size_t target = 0;
  std::uint64_t count = 0;
  CostVector cost;

  friend bool operator==(const AbstractEdge&, const AbstractEdge&) = default;
};

struct AbstractGraph {
  GroupLevel level = GroupLevel::Class;
  EventSpec events;
  std::vector<AbstractNode> nodes;  // ordered by first_record_index
  std::vector<AbstractEdge> edges;  // ordered by (source, target)
  CostVector total;

  const AbstractNode* find(const std::string& label) const;

  friend bool operator==(const AbstractGraph&, const AbstractGraph&) = default;
};

// Class level groups by the depth-0 "::"-prefix of the symbol (free
// functions land under "<free functions>"); file level groups by
// FunctionKey::file ("<unknown>" when empty). Edges between members of one
// group become a retained self-loop; aggregation conserves total self cost
// and edge multiplicity.
AbstractGraph aggregate(const CallGraph& graph, GroupLevel level);

// Unique leaf names of a node's members, sorted.
std::vector<std::string> member_leaves(const AbstractNode& node);

struct CategoryRule {
  std::string category;
  std::vector<std::string> patterns;  // case-insensitive substrings by default
  bool is_regex = false;
};

// Ordered: the first matching rule wins; nodes matching none get
// "uncategorized". A rule matches on the node label first, then on member
// leaf names.
struct CategoryRuleset {
  std::vector<CategoryRule> rules;
};

// Shipped defaults reconstructing the responsibility split used throughout
// the scenario fixtures: initialization, class-registration, graphics,
// window-system. Identical to data/default-ruleset.json.
CategoryRuleset default_ruleset();

// JSON schema: {"schema_version":1,"rules":[{"category":...,
// "patterns":[...], "is_regex":false}, ...]}.
CategoryRuleset load_ruleset(std::istream& in);
CategoryRuleset load_ruleset_file(const std::string& path);

AbstractGraph categorize(AbstractGraph graph, const CategoryRuleset& rules);

}  // namespace callanat
