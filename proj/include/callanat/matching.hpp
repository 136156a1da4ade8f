// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "callanat/abstract.hpp"

namespace callanat {

// Declared component of a reference architecture. `aliases` feed the exact
// tier, `known_methods` the method-evidence tier.
struct ReferenceComponent {
  std::string name;
  int layer = 0;
  std::vector<std::string> aliases;
  std::vector<std::string> known_methods;
};

struct ReferenceArchitecture {
  std::string name;
  std::vector<ReferenceComponent> components;
};

enum class MatchTier { Exact, Fuzzy, MethodEvidence, Unmatched };

std::string to_string(MatchTier tier);

struct MatchResult {
  std::string component;
  std::optional<std::string> matched_label;
  MatchTier tier = MatchTier::Unmatched;
  std::vector<std::string> evidence;  // matched name, tokens, or methods
  Share score;                        // exact => 1; fuzzy => Jaccard
};

// Splits an identifier at non-alphanumeric characters and camel-case
// boundaries, lowercased: "Physics2DServer" -> {physics, 2d, server},
// "X11Window" -> {x11, window}. Digits stay attached to an adjacent
// uppercase run.
std::vector<std::string> tokenize_identifier(std::string_view text);

// Tier precedence exact > fuzzy > method-evidence, per component:
//   exact   case-insensitive label equality with the name or an alias
//   fuzzy   token sets with Jaccard >= fuzzy_threshold, or one set
//           containing the other; score is the Jaccard index
//   method  at least 2 known_methods among the node's member leaf names
//           (1 suffices when the component lists exactly one)
// Ties break on higher score, then lower first_record_index.
std::vector<MatchResult> match_reference(const AbstractGraph& graph,
                                         const ReferenceArchitecture& reference,
                                         double fuzzy_threshold = 0.5);

// JSON schema: {"schema_version":1,"name":...,"components":[{"name":...,
// "layer":0,"aliases":[...],"known_methods":[...]}]}.
ReferenceArchitecture load_reference(std::istream& in);
ReferenceArchitecture load_reference_file(const std::string& path);

}  // namespace callanat
