// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "callanat/matching.hpp"

namespace callanat {

class UnknownEntry : public GraphError {
 public:
  using GraphError::GraphError;
};

struct InitStep {
  std::string label;
  std::string category;
  std::size_t first_record_index = 0;

  friend bool operator==(const InitStep&, const InitStep&) = default;
};

// Components in the order they are first reached from the entry point.
// Record order stands in for call order: the profile format carries no
// timestamps, so this is an approximation and is flagged as such in reports.
using InitSequence = std::vector<InitStep>;

// Nodes reachable from the group containing `entry`, emitted in ascending
// first_record_index. Throws UnknownEntry when no group contains the key.
InitSequence extract_init_sequence(const AbstractGraph& graph,
                                   const FunctionKey& entry);

// Unordered category pairs whose first occurrences appear in opposite
// relative order; each pair and the list itself sorted lexicographically.
std::vector<std::pair<std::string, std::string>> diff_order(
    const InitSequence& a, const InitSequence& b);

// One side of a comparison: a categorized abstract graph plus the function
// the traversal starts from (normally the first entry point of the
// underlying call graph).
struct SystemView {
  std::string name;
  AbstractGraph graph;
  FunctionKey entry;
};

struct CompareOptions {
  double fuzzy_threshold = 0.5;
  double idle_threshold = 0.01;  // inclusive share below this is flagged idle
  std::size_t event_index = 0;
};

struct CommonComponent {
  std::string left;
  std::string right;
  MatchTier tier = MatchTier::Unmatched;
  Share score;

  friend bool operator==(const CommonComponent&, const CommonComponent&) = default;
};

struct ComparisonReport {
  std::string left;
  std::string right;
  std::vector<CommonComponent> common;
  std::vector<std::string> only_left;
  std::vector<std::string> only_right;
  std::vector<std::string> categories_common;
  std::vector<std::string> categories_only_left;
  std::vector<std::string> categories_only_right;
  std::vector<std::pair<std::string, std::string>> order_inversions;
  InitSequence left_sequence;
  InitSequence right_sequence;
  std::vector<std::string> notes;
};

// Symmetric best-match between the two systems' nodes with the same tiers as
// match_reference (member leaves serve as method evidence), one-to-one by
// descending score. Also diffs category sets and initialization order, and
// flags categorized components whose inclusive share sits below
// idle_threshold.
ComparisonReport compare(const SystemView& left, const SystemView& right,
                         const CompareOptions& options = {});

}  // namespace callanat
