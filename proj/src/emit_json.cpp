// SPDX-License-Identifier: Apache-2.0
#include <nlohmann/json.hpp>

#include "callanat/emit.hpp"

namespace callanat {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

Json key_json(const FunctionKey& key) {
  return Json{{"object", key.object}, {"file", key.file}, {"name", key.name}};
}

FunctionKey key_from(const Json& j) {
  return FunctionKey{j.at("object").get<std::string>(),
                     j.at("file").get<std::string>(),
                     j.at("name").get<std::string>()};
}

Json events_json(const EventSpec& events) {
  Json derived = Json::array();
  for (const auto& d : events.derived)
    derived.push_back(Json{{"name", d.name}, {"formula", d.formula}});
  return Json{{"names", events.names}, {"derived", std::move(derived)}};
}

EventSpec events_from(const Json& j) {
  EventSpec events;
  events.names = j.at("names").get<std::vector<std::string>>();
  for (const auto& d : j.at("derived"))
    events.derived.push_back(DerivedEvent{d.at("name").get<std::string>(),
                                          d.at("formula").get<std::string>()});
  return events;
}

Json document(const char* kind) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = kind;
  return doc;
}

Json parse_document(const std::string& text, const char* kind) {
  auto doc = Json::parse(text);
  if (doc.at("kind").get<std::string>() != kind)
    throw ConfigError(std::string("expected a ") + kind + " document");
  return doc;
}

Json init_sequence_json(const InitSequence& sequence) {
  Json out = Json::array();
  for (const auto& step : sequence)
    out.push_back(Json{{"label", step.label},
                       {"category", step.category},
                       {"first_record_index", step.first_record_index}});
  return out;
}

}  // namespace

std::string emit_json(const Profile& profile) {
  Json doc = document("profile");
  doc["header"] = profile.header;
  doc["events"] = events_json(profile.events);
  if (profile.summary)
    doc["summary"] = *profile.summary;
  else
    doc["summary"] = nullptr;
  Json functions = Json::array();
  for (const auto* key : profile.record_order()) {
    const auto& rec = profile.functions.at(*key);
    Json f = key_json(*key);
    f["first_record_index"] = rec.first_record_index;
    f["self"] = rec.self;
    Json calls = Json::array();
    for (const auto& call : rec.calls) {
      Json c = key_json(call.callee);
      c["count"] = call.count;
      c["cost"] = call.cost;
      calls.push_back(std::move(c));
    }
    f["calls"] = std::move(calls);
    functions.push_back(std::move(f));
  }
  doc["functions"] = std::move(functions);
  return doc.dump(2) + "\n";
}

Profile profile_from_json(const std::string& text) {
  const auto doc = parse_document(text, "profile");
  Profile profile;
  profile.header = doc.at("header").get<std::map<std::string, std::string>>();
  profile.events = events_from(doc.at("events"));
  if (!doc.at("summary").is_null())
    profile.summary = doc.at("summary").get<CostVector>();
  for (const auto& f : doc.at("functions")) {
    FunctionRecord rec;
    rec.first_record_index = f.at("first_record_index").get<std::size_t>();
    rec.self = f.at("self").get<CostVector>();
    for (const auto& c : f.at("calls"))
      rec.calls.push_back(CallRecord{key_from(c), c.at("count").get<std::uint64_t>(),
                                     c.at("cost").get<CostVector>()});
    profile.functions.emplace(key_from(f), std::move(rec));
  }
  return profile;
}

std::string emit_json(const CallGraph& graph) {
  Json doc = document("call-graph");
  doc["events"] = events_json(graph.events);
  doc["total"] = graph.total;
  Json nodes = Json::array();
  std::map<FunctionKey, std::size_t> index;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& node = graph.nodes[i];
    index.emplace(node.key, i);
    Json n = key_json(node.key);
    n["first_record_index"] = node.first_record_index;
    n["scc_id"] = node.scc_id;
    n["self"] = node.self;
    n["inclusive"] = node.inclusive;
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const auto& edge : graph.edges)
    edges.push_back(Json{{"caller", index.at(edge.caller)},
                         {"callee", index.at(edge.callee)},
                         {"count", edge.count},
                         {"cost", edge.cost}});
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

CallGraph callgraph_from_json(const std::string& text) {
  const auto doc = parse_document(text, "call-graph");
  CallGraph graph;
  graph.events = events_from(doc.at("events"));
  graph.total = doc.at("total").get<CostVector>();
  for (const auto& n : doc.at("nodes")) {
    FunctionNode node;
    node.key = key_from(n);
    node.first_record_index = n.at("first_record_index").get<std::size_t>();
    node.scc_id = n.at("scc_id").get<std::size_t>();
    node.self = n.at("self").get<CostVector>();
    node.inclusive = n.at("inclusive").get<CostVector>();
    graph.nodes.push_back(std::move(node));
  }
  for (const auto& e : doc.at("edges")) {
    CallEdge edge;
    edge.caller = graph.nodes.at(e.at("caller").get<std::size_t>()).key;
    edge.callee = graph.nodes.at(e.at("callee").get<std::size_t>()).key;
    edge.count = e.at("count").get<std::uint64_t>();
    edge.cost = e.at("cost").get<CostVector>();
    graph.edges.push_back(std::move(edge));
  }
  return graph;
}

std::string emit_json(const AbstractGraph& graph) {
  Json doc = document("abstract-graph");
  doc["level"] = to_string(graph.level);
  doc["events"] = events_json(graph.events);
  doc["total"] = graph.total;
  Json nodes = Json::array();
  for (const auto& node : graph.nodes) {
    Json n;
    n["label"] = node.label;
    if (node.category.empty())
      n["category"] = nullptr;
    else
      n["category"] = node.category;
    n["first_record_index"] = node.first_record_index;
    n["self"] = node.self;
    n["inclusive"] = node.inclusive;
    Json members = Json::array();
    for (const auto& member : node.members) members.push_back(key_json(member));
    n["members"] = std::move(members);
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const auto& edge : graph.edges)
    edges.push_back(Json{{"source", graph.nodes[edge.source].label},
                         {"target", graph.nodes[edge.target].label},
                         {"count", edge.count},
                         {"cost", edge.cost}});
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

AbstractGraph abstract_from_json(const std::string& text) {
  const auto doc = parse_document(text, "abstract-graph");
  AbstractGraph graph;
  graph.level = group_level_from_string(doc.at("level").get<std::string>());
  graph.events = events_from(doc.at("events"));
  graph.total = doc.at("total").get<CostVector>();
  std::map<std::string, std::size_t> index;
  for (const auto& n : doc.at("nodes")) {
    AbstractNode node;
    node.label = n.at("label").get<std::string>();
    if (!n.at("category").is_null())
      node.category = n.at("category").get<std::string>();
    node.first_record_index = n.at("first_record_index").get<std::size_t>();
    node.self = n.at("self").get<CostVector>();
    node.inclusive = n.at("inclusive").get<CostVector>();
    for (const auto& m : n.at("members")) node.members.push_back(key_from(m));
    index.emplace(node.label, graph.nodes.size());
    graph.nodes.push_back(std::move(node));
  }
  for (const auto& e : doc.at("edges"))
    graph.edges.push_back(
        AbstractEdge{index.at(e.at("source").get<std::string>()),
                     index.at(e.at("target").get<std::string>()),
                     e.at("count").get<std::uint64_t>(),
                     e.at("cost").get<CostVector>()});
  return graph;
}

std::string emit_json(const IncludeGraph& graph) {
  Json doc = document("include-graph");
  doc["scan_root"] = graph.scan_root;
  doc["files"] = graph.files;
  Json edges = Json::array();
  for (const auto& edge : graph.edges)
    edges.push_back(Json{{"includer", edge.includer},
                         {"included", edge.included},
                         {"kind", to_string(edge.kind)},
                         {"resolved", edge.resolved}});
  doc["edges"] = std::move(edges);
  Json issues = Json::array();
  for (const auto& issue : graph.issues)
    issues.push_back(Json{{"path", issue.path}, {"message", issue.message}});
  doc["issues"] = std::move(issues);
  return doc.dump(2) + "\n";
}

IncludeGraph include_graph_from_json(const std::string& text) {
  const auto doc = parse_document(text, "include-graph");
  IncludeGraph graph;
  graph.scan_root = doc.at("scan_root").get<std::string>();
  graph.files = doc.at("files").get<std::vector<std::string>>();
  for (const auto& e : doc.at("edges"))
    graph.edges.push_back(IncludeEdge{
        e.at("includer").get<std::string>(), e.at("included").get<std::string>(),
        e.at("kind").get<std::string>() == "angled" ? IncludeKind::Angled
                                                    : IncludeKind::Quoted,
        e.at("resolved").get<bool>()});
  for (const auto& issue : doc.at("issues"))
    graph.issues.push_back(ScanIssue{issue.at("path").get<std::string>(),
                                     issue.at("message").get<std::string>()});
  return graph;
}

std::string emit_json(const ComparisonReport& report) {
  Json doc = document("comparison-report");
  doc["left"] = report.left;
  doc["right"] = report.right;
  Json common = Json::array();
  for (const auto& entry : report.common)
    common.push_back(Json{{"left", entry.left},
                          {"right", entry.right},
                          {"tier", to_string(entry.tier)},
                          {"score", entry.score.value()}});
  doc["common"] = std::move(common);
  doc["only_left"] = report.only_left;
  doc["only_right"] = report.only_right;
  doc["categories"] = Json{{"common", report.categories_common},
                           {"only_left", report.categories_only_left},
                           {"only_right", report.categories_only_right}};
  Json inversions = Json::array();
  for (const auto& [a, b] : report.order_inversions)
    inversions.push_back(Json::array({a, b}));
  doc["order_inversions"] = std::move(inversions);
  doc["left_sequence"] = init_sequence_json(report.left_sequence);
  doc["right_sequence"] = init_sequence_json(report.right_sequence);
  doc["notes"] = report.notes;
  return doc.dump(2) + "\n";
}

std::string emit_json(const ReferenceArchitecture& reference,
                      const std::vector<MatchResult>& results,
                      double fuzzy_threshold) {
  Json doc = document("match-report");
  doc["reference"] = reference.name;
  doc["fuzzy_threshold"] = fuzzy_threshold;
  Json entries = Json::array();
  for (const auto& result : results) {
    Json entry;
    entry["component"] = result.component;
    if (result.matched_label)
      entry["matched_label"] = *result.matched_label;
    else
      entry["matched_label"] = nullptr;
    entry["tier"] = to_string(result.tier);
    entry["score"] = result.score.value();
    entry["evidence"] = result.evidence;
    entries.push_back(std::move(entry));
  }
  doc["results"] = std::move(entries);
  return doc.dump(2) + "\n";
}

}  // namespace callanat
