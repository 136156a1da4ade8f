// SPDX-License-Identifier: Apache-2.0
#include "callanat/comparison.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace callanat {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string category_of(const AbstractNode& node) {
  return node.category.empty() ? "uncategorized" : node.category;
}

std::map<std::string, std::size_t> first_occurrences(const InitSequence& seq) {
  std::map<std::string, std::size_t> first;
  for (std::size_t i = 0; i < seq.size(); ++i)
    first.try_emplace(seq[i].category, i);
  return first;
}

Cost cost_at(const CostVector& v, std::size_t i) {
  return i < v.size() ? v[i] : 0;
}

struct Candidate {
  std::size_t left;
  std::size_t right;
  MatchTier tier = MatchTier::Unmatched;
  Share score;
};

// Symmetric pair score: exact label equality, then token overlap, then
// shared member leaf names (Jaccard over leaf sets keeps it symmetric).
Candidate score_pair(const AbstractNode& a, const AbstractNode& b,
                     const std::set<std::string>& tokens_a,
                     const std::set<std::string>& tokens_b,
                     const std::vector<std::string>& leaves_a,
                     const std::vector<std::string>& leaves_b,
                     double fuzzy_threshold) {
  Candidate out{0, 0, MatchTier::Unmatched, Share{0, 0}};
  if (lowercase(a.label) == lowercase(b.label)) {
    out.tier = MatchTier::Exact;
    out.score = Share{1, 1};
    return out;
  }

  if (!tokens_a.empty() && !tokens_b.empty()) {
    std::size_t intersection = 0;
    for (const auto& token : tokens_a) intersection += tokens_b.count(token);
    const Share jaccard{intersection, tokens_a.size() + tokens_b.size() - intersection};
    const bool containment = intersection == tokens_a.size() ||
                             intersection == tokens_b.size();
    if ((jaccard.den != 0 && jaccard.value() >= fuzzy_threshold) ||
        (containment && intersection > 0)) {
      out.tier = MatchTier::Fuzzy;
      out.score = jaccard;
      return out;
    }
  }

  std::set<std::string> la;
  for (const auto& leaf : leaves_a) la.insert(lowercase(leaf));
  std::set<std::string> lb;
  for (const auto& leaf : leaves_b) lb.insert(lowercase(leaf));
  if (!la.empty() && !lb.empty()) {
    std::size_t shared = 0;
    for (const auto& leaf : la) shared += lb.count(leaf);
    const std::size_t needed = std::min(la.size(), lb.size()) == 1 ? 1 : 2;
    if (shared >= needed) {
      out.tier = MatchTier::MethodEvidence;
      out.score = Share{shared, la.size() + lb.size() - shared};
      return out;
    }
  }
  return out;
}

}  // namespace

InitSequence extract_init_sequence(const AbstractGraph& graph,
                                   const FunctionKey& entry) {
  std::size_t start = graph.nodes.size();
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& members = graph.nodes[i].members;
    if (std::binary_search(members.begin(), members.end(), entry)) {
      start = i;
      break;
    }
  }
  if (start == graph.nodes.size())
    throw UnknownEntry("entry function not present in any component: " + entry.name);

  std::vector<std::vector<std::size_t>> adjacency(graph.nodes.size());
  for (const auto& edge : graph.edges)
    if (edge.source != edge.target) adjacency[edge.source].push_back(edge.target);
  for (auto& out : adjacency) {
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
      return graph.nodes[a].first_record_index < graph.nodes[b].first_record_index;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

  std::vector<bool> visited(graph.nodes.size(), false);
  std::vector<std::size_t> stack{start};
  visited[start] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto w : adjacency[v]) {
      if (visited[w]) continue;
      visited[w] = true;
      stack.push_back(w);
    }
  }

  // Emission is ordered by record rank so the sequence is monotone in
  // first_record_index; nodes are already stored in that order.
  InitSequence sequence;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    if (!visited[i]) continue;
    const auto& node = graph.nodes[i];
    sequence.push_back(
        InitStep{node.label, category_of(node), node.first_record_index});
  }
  return sequence;
}

std::vector<std::pair<std::string, std::string>> diff_order(
    const InitSequence& a, const InitSequence& b) {
  const auto first_a = first_occurrences(a);
  const auto first_b = first_occurrences(b);

  std::vector<std::string> shared;
  for (const auto& [category, pos] : first_a)
    if (first_b.count(category)) shared.push_back(category);

  std::vector<std::pair<std::string, std::string>> inverted;
  for (std::size_t i = 0; i < shared.size(); ++i) {
    for (std::size_t j = i + 1; j < shared.size(); ++j) {
      const auto& x = shared[i];
      const auto& y = shared[j];
      const bool before_a = first_a.at(x) < first_a.at(y);
      const bool before_b = first_b.at(x) < first_b.at(y);
      if (before_a != before_b) inverted.emplace_back(x, y);
    }
  }
  std::sort(inverted.begin(), inverted.end());
  return inverted;
}

ComparisonReport compare(const SystemView& left, const SystemView& right,
                         const CompareOptions& options) {
  ComparisonReport report;
  report.left = left.name;
  report.right = right.name;

  const auto& lg = left.graph;
  const auto& rg = right.graph;

  std::vector<std::set<std::string>> tokens_l(lg.nodes.size());
  std::vector<std::vector<std::string>> leaves_l(lg.nodes.size());
  for (std::size_t i = 0; i < lg.nodes.size(); ++i) {
    const auto toks = tokenize_identifier(lg.nodes[i].label);
    tokens_l[i] = {toks.begin(), toks.end()};
    leaves_l[i] = member_leaves(lg.nodes[i]);
  }
  std::vector<std::set<std::string>> tokens_r(rg.nodes.size());
  std::vector<std::vector<std::string>> leaves_r(rg.nodes.size());
  for (std::size_t j = 0; j < rg.nodes.size(); ++j) {
    const auto toks = tokenize_identifier(rg.nodes[j].label);
    tokens_r[j] = {toks.begin(), toks.end()};
    leaves_r[j] = member_leaves(rg.nodes[j]);
  }

  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < lg.nodes.size(); ++i) {
    for (std::size_t j = 0; j < rg.nodes.size(); ++j) {
      auto candidate =
          score_pair(lg.nodes[i], rg.nodes[j], tokens_l[i], tokens_r[j],
                     leaves_l[i], leaves_r[j], options.fuzzy_threshold);
      if (candidate.tier == MatchTier::Unmatched) continue;
      candidate.left = i;
      candidate.right = j;
      candidates.push_back(candidate);
    }
  }
  // mirror-stable ordering: swapping the two systems yields the mirrored list
  std::sort(candidates.begin(), candidates.end(),
            [&](const Candidate& a, const Candidate& b) {
              if (a.tier != b.tier) return a.tier < b.tier;
              if (!(a.score == b.score)) return b.score < a.score;
              const auto fa = std::minmax(lg.nodes[a.left].first_record_index,
                                          rg.nodes[a.right].first_record_index);
              const auto fb = std::minmax(lg.nodes[b.left].first_record_index,
                                          rg.nodes[b.right].first_record_index);
              if (fa != fb) return fa < fb;
              const auto la = std::minmax(lg.nodes[a.left].label,
                                          rg.nodes[a.right].label);
              const auto lb = std::minmax(lg.nodes[b.left].label,
                                          rg.nodes[b.right].label);
              return la < lb;
            });

  std::vector<bool> taken_l(lg.nodes.size(), false);
  std::vector<bool> taken_r(rg.nodes.size(), false);
  std::vector<Candidate> chosen;
  for (const auto& candidate : candidates) {
    if (taken_l[candidate.left] || taken_r[candidate.right]) continue;
    taken_l[candidate.left] = true;
    taken_r[candidate.right] = true;
    chosen.push_back(candidate);
  }
  std::sort(chosen.begin(), chosen.end(), [&](const Candidate& a, const Candidate& b) {
    return lg.nodes[a.left].first_record_index < lg.nodes[b.left].first_record_index;
  });
  for (const auto& candidate : chosen)
    report.common.push_back(CommonComponent{lg.nodes[candidate.left].label,
                                            rg.nodes[candidate.right].label,
                                            candidate.tier, candidate.score});
  for (std::size_t i = 0; i < lg.nodes.size(); ++i)
    if (!taken_l[i]) report.only_left.push_back(lg.nodes[i].label);
  for (std::size_t j = 0; j < rg.nodes.size(); ++j)
    if (!taken_r[j]) report.only_right.push_back(rg.nodes[j].label);

  std::set<std::string> cats_l;
  for (const auto& node : lg.nodes) cats_l.insert(category_of(node));
  std::set<std::string> cats_r;
  for (const auto& node : rg.nodes) cats_r.insert(category_of(node));
  for (const auto& category : cats_l) {
    if (cats_r.count(category))
      report.categories_common.push_back(category);
    else
      report.categories_only_left.push_back(category);
  }
  for (const auto& category : cats_r)
    if (!cats_l.count(category)) report.categories_only_right.push_back(category);

  report.left_sequence = extract_init_sequence(lg, left.entry);
  report.right_sequence = extract_init_sequence(rg, right.entry);
  report.order_inversions = diff_order(report.left_sequence, report.right_sequence);

  report.notes.push_back(
      "initialization order is approximated from record order; the profile "
      "format does not timestamp calls");

  auto flag_idle = [&](const SystemView& side, const AbstractGraph& graph) {
    for (const auto& node : graph.nodes) {
      if (category_of(node) == "uncategorized") continue;
      const auto total = cost_at(graph.total, options.event_index);
      const auto share =
          Share::of(cost_at(node.inclusive, options.event_index), total);
      if (total == 0 || share.value() >= options.idle_threshold) continue;
      report.notes.push_back(side.name + ": \"" + node.label + "\" (" +
                             category_of(node) + ") uses only " + share.percent() +
                             "% of total - initialized but possibly unused");
    }
  };
  flag_idle(left, lg);
  flag_idle(right, rg);

  return report;
}

}  // namespace callanat
