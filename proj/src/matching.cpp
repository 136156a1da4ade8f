// SPDX-License-Identifier: Apache-2.0
#include "callanat/matching.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace callanat {

namespace {

bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)); }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::set<std::string> token_set(std::string_view text) {
  const auto tokens = tokenize_identifier(text);
  return {tokens.begin(), tokens.end()};
}

Share jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() || b.empty()) return Share{0, 0};
  std::size_t intersection = 0;
  for (const auto& token : a) intersection += b.count(token);
  const auto unioned = a.size() + b.size() - intersection;
  return Share{intersection, unioned};
}

bool contains(const std::set<std::string>& outer, const std::set<std::string>& inner) {
  if (inner.empty() || outer.empty()) return false;
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace

std::string to_string(MatchTier tier) {
  switch (tier) {
    case MatchTier::Exact: return "exact";
    case MatchTier::Fuzzy: return "fuzzy";
    case MatchTier::MethodEvidence: return "method-evidence";
    case MatchTier::Unmatched: return "unmatched";
  }
  return "unmatched";
}

std::vector<std::string> tokenize_identifier(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(lowercase(current));
      current.clear();
    }
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!std::isalnum(static_cast<unsigned char>(c))) {
      flush();
      continue;
    }
    if (!current.empty()) {
      const char prev = current.back();
      const bool upper_next_lower =
          is_upper(c) && i + 1 < text.size() && is_lower(text[i + 1]);
      if ((is_lower(prev) && is_upper(c)) ||
          ((is_upper(prev) || is_digit(prev)) && upper_next_lower) ||
          (is_lower(prev) && is_digit(c))) {
        flush();
      }
    }
    current += c;
  }
  flush();
  return tokens;
}

std::vector<MatchResult> match_reference(const AbstractGraph& graph,
                                         const ReferenceArchitecture& reference,
                                         double fuzzy_threshold) {
  struct NodeInfo {
    const AbstractNode* node;
    std::string lower_label;
    std::set<std::string> tokens;
    std::vector<std::string> leaves;
  };
  std::vector<NodeInfo> nodes;
  nodes.reserve(graph.nodes.size());
  for (const auto& node : graph.nodes)
    nodes.push_back(NodeInfo{&node, lowercase(node.label), token_set(node.label),
                             member_leaves(node)});

  std::vector<MatchResult> results;
  results.reserve(reference.components.size());

  for (const auto& component : reference.components) {
    MatchResult result;
    result.component = component.name;

    // exact: case-insensitive equality with name or alias
    {
      std::vector<std::string> candidates{lowercase(component.name)};
      for (const auto& alias : component.aliases) candidates.push_back(lowercase(alias));
      const NodeInfo* best = nullptr;
      std::string matched_name;
      for (const auto& info : nodes) {
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          if (info.lower_label != candidates[c]) continue;
          if (best == nullptr ||
              info.node->first_record_index < best->node->first_record_index) {
            best = &info;
            matched_name = c == 0 ? component.name : component.aliases[c - 1];
          }
          break;
        }
      }
      if (best != nullptr) {
        result.matched_label = best->node->label;
        result.tier = MatchTier::Exact;
        result.score = Share{1, 1};
        result.evidence = {matched_name};
        results.push_back(std::move(result));
        continue;
      }
    }

    // fuzzy: token-set overlap against the component name
    {
      const auto component_tokens = token_set(component.name);
      const NodeInfo* best = nullptr;
      Share best_score;
      for (const auto& info : nodes) {
        const auto score = jaccard(component_tokens, info.tokens);
        const bool accepted =
            (score.den != 0 && score.value() >= fuzzy_threshold) ||
            contains(component_tokens, info.tokens) ||
            contains(info.tokens, component_tokens);
        if (!accepted) continue;
        if (best == nullptr || best_score < score ||
            (score == best_score &&
             info.node->first_record_index < best->node->first_record_index)) {
          best = &info;
          best_score = score;
        }
      }
      if (best != nullptr) {
        result.matched_label = best->node->label;
        result.tier = MatchTier::Fuzzy;
        result.score = best_score;
        std::vector<std::string> shared;
        for (const auto& token : component_tokens)
          if (best->tokens.count(token)) shared.push_back(token);
        result.evidence = std::move(shared);
        results.push_back(std::move(result));
        continue;
      }
    }

    // method evidence: known method names among the node's member leaves
    if (!component.known_methods.empty()) {
      std::set<std::string> wanted;
      for (const auto& method : component.known_methods)
        wanted.insert(lowercase(method));
      const std::size_t needed = component.known_methods.size() == 1 ? 1 : 2;

      const NodeInfo* best = nullptr;
      Share best_score;
      std::vector<std::string> best_evidence;
      for (const auto& info : nodes) {
        std::vector<std::string> hits;
        for (const auto& leaf : info.leaves)
          if (wanted.count(lowercase(leaf))) hits.push_back(leaf);
        if (hits.size() < needed) continue;
        const Share score{hits.size(), wanted.size()};
        if (best == nullptr || best_score < score ||
            (score == best_score &&
             info.node->first_record_index < best->node->first_record_index)) {
          best = &info;
          best_score = score;
          best_evidence = std::move(hits);
        }
      }
      if (best != nullptr) {
        result.matched_label = best->node->label;
        result.tier = MatchTier::MethodEvidence;
        result.score = best_score;
        result.evidence = std::move(best_evidence);
        results.push_back(std::move(result));
        continue;
      }
    }

    result.tier = MatchTier::Unmatched;
    result.score = Share{0, 0};
    results.push_back(std::move(result));
  }
  return results;
}

ReferenceArchitecture load_reference(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("reference is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("name") || !doc["name"].is_string() ||
      !doc.contains("components") || !doc["components"].is_array())
    throw ConfigError("reference must declare a name and a components array");

  ReferenceArchitecture out;
  out.name = doc["name"].get<std::string>();
  std::set<std::string> seen;
  for (const auto& entry : doc["components"]) {
    if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string())
      throw ConfigError("each component needs a name");
    ReferenceComponent component;
    component.name = entry["name"].get<std::string>();
    if (!seen.insert(component.name).second)
      throw ConfigError("duplicate component name: " + component.name);
    component.layer = entry.value("layer", 0);
    if (component.layer < 0)
      throw ConfigError("component layer must be >= 0: " + component.name);
    for (const auto& alias : entry.value("aliases", nlohmann::json::array())) {
      if (!alias.is_string()) throw ConfigError("aliases must be strings");
      component.aliases.push_back(alias.get<std::string>());
    }
    for (const auto& method :
         entry.value("known_methods", nlohmann::json::array())) {
      if (!method.is_string()) throw ConfigError("known_methods must be strings");
      component.known_methods.push_back(method.get<std::string>());
    }
    out.components.push_back(std::move(component));
  }
  return out;
}

ReferenceArchitecture load_reference_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open reference file: " + path);
  return load_reference(in);
}

}  // namespace callanat
