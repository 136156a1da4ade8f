// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "callanat/comparison.hpp"
#include "callanat/emit.hpp"
#include "callanat/parser.hpp"

namespace {

using namespace callanat;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;   // profile / source-tree parse failure
constexpr int kExitConfig = 3;  // flags, ruleset, reference, config file

Profile load_profiles(const std::vector<std::string>& paths) {
  std::vector<Profile> parts;
  parts.reserve(paths.size());
  for (const auto& path : paths) parts.push_back(parse_profile_file(path));
  return merge_parts(parts);
}

CategoryRuleset ruleset_or_default(const std::string& path) {
  if (path.empty()) return default_ruleset();
  return load_ruleset_file(path);
}

std::string system_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

SystemView make_view(const std::string& path, const CategoryRuleset& rules,
                     GroupLevel level) {
  const auto profile = parse_profile_file(path);
  const auto graph = build_graph(profile);
  SystemView view;
  view.name = system_name(path);
  view.graph = categorize(aggregate(graph, level), rules);
  view.entry = entry_points(graph).front();
  return view;
}

struct InspectArgs {
  std::vector<std::string> profiles;
};

int run_inspect(const InspectArgs& args) {
  const auto profile = load_profiles(args.profiles);
  for (const auto& [key, value] : profile.header) {
    std::size_t start = 0;
    while (true) {
      const auto nl = value.find('\n', start);
      std::cout << key << ": " << value.substr(start, nl - start) << '\n';
      if (nl == std::string::npos) break;
      start = nl + 1;
    }
  }
  std::cout << "events:";
  for (const auto& name : profile.events.names) std::cout << ' ' << name;
  std::cout << '\n';
  const auto graph = build_graph(profile);
  std::cout << "functions: " << graph.nodes.size() << '\n';
  std::cout << "calls: " << graph.edges.size() << '\n';
  for (std::size_t e = 0; e < profile.events.size(); ++e)
    std::cout << "total " << profile.events.names[e] << ": " << graph.total[e]
              << '\n';
  return kExitOk;
}

struct GraphArgs {
  std::vector<std::string> profiles;
  std::string level = "class";
  std::string format = "dot";
  std::string ruleset;
  double threshold = 0.01;
  int max_depth = -1;
  std::size_t event_index = 0;
};

int run_graph(const GraphArgs& args) {
  const auto profile = load_profiles(args.profiles);
  const auto graph = build_graph(profile);

  DotOptions options;
  options.threshold = args.threshold;
  if (args.max_depth >= 0) options.max_depth = static_cast<std::size_t>(args.max_depth);
  options.event_index = args.event_index;

  const auto level = group_level_from_string(args.level);
  if (level == GroupLevel::Function) {
    std::cout << (args.format == "json" ? emit_json(graph) : emit_dot(graph, options));
    return kExitOk;
  }
  const auto abstract =
      categorize(aggregate(graph, level), ruleset_or_default(args.ruleset));
  std::cout << (args.format == "json" ? emit_json(abstract)
                                      : emit_dot(abstract, options));
  return kExitOk;
}

struct TopArgs {
  std::vector<std::string> profiles;
  std::size_t count = 20;
  std::string kind = "self";
  std::size_t event_index = 0;
};

int run_top(const TopArgs& args) {
  const auto graph = build_graph(load_profiles(args.profiles));
  std::cout << emit_top(graph, args.count,
                        args.kind == "inclusive" ? CostKind::Inclusive
                                                 : CostKind::Self,
                        args.event_index);
  return kExitOk;
}

struct MatchArgs {
  std::string profile;
  std::string reference_positional;
  std::string reference_flag;
  std::string format = "text";
  double fuzzy_threshold = 0.5;
};

int run_match(const MatchArgs& args) {
  const auto reference_path = !args.reference_flag.empty()
                                  ? args.reference_flag
                                  : args.reference_positional;
  if (reference_path.empty())
    throw ConfigError("match needs a reference file (positional or --reference)");
  const auto reference = load_reference_file(reference_path);

  const auto profile = parse_profile_file(args.profile);
  const auto abstract = aggregate(build_graph(profile), GroupLevel::Class);
  const auto results = match_reference(abstract, reference, args.fuzzy_threshold);
  if (args.format == "json")
    std::cout << emit_json(reference, results, args.fuzzy_threshold);
  else
    std::cout << emit_text(reference, results);
  return kExitOk;
}

struct CompareArgs {
  std::string left;
  std::string right;
  std::string ruleset;
  std::string level = "class";
  std::string format = "text";
  CompareOptions options;
};

int run_compare(const CompareArgs& args) {
  const auto rules = ruleset_or_default(args.ruleset);
  const auto level = group_level_from_string(args.level);
  const auto left = make_view(args.left, rules, level);
  const auto right = make_view(args.right, rules, level);
  const auto report = compare(left, right, args.options);
  std::cout << (args.format == "json" ? emit_json(report) : emit_text(report));
  return kExitOk;
}

struct IncludesArgs {
  std::string root;
  ScanOptions scan;
  std::size_t depth = 0;  // 0 = file-level graph
  bool include_unresolved = false;
  std::string format = "dot";
};

int run_includes(const IncludesArgs& args) {
  if (!std::filesystem::is_directory(args.root))
    throw IoError("not a readable directory: " + args.root);
  const auto graph = scan_includes(args.root, args.scan);
  for (const auto& issue : graph.issues)
    std::cerr << "warning: " << issue.path << ": " << issue.message << '\n';
  if (args.depth == 0) {
    std::cout << (args.format == "json" ? emit_json(graph) : emit_dot(graph));
    return kExitOk;
  }
  const auto dirs = aggregate_dirs(graph, args.depth, args.include_unresolved);
  if (args.format == "json") {
    std::cout << emit_json(dirs);
  } else {
    DotOptions options;
    options.threshold = 0.0;
    std::cout << emit_dot(dirs, options);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"callanat - Callgrind profile anatomy toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read option defaults from an INI/TOML file");

  InspectArgs inspect_args;
  auto* inspect = app.add_subcommand(
      "inspect", "parse profiles and print summary facts");
  inspect->add_option("profiles", inspect_args.profiles, "Callgrind profile parts")
      ->required();

  GraphArgs graph_args;
  auto* graph = app.add_subcommand(
      "graph", "build a call graph and emit DOT or JSON");
  graph->add_option("profiles", graph_args.profiles, "Callgrind profile parts")
      ->required();
  graph->add_option("--level", graph_args.level, "function|class|file")
      ->check(CLI::IsMember({"function", "class", "file"}))
      ->capture_default_str();
  graph->add_option("--format", graph_args.format, "dot|json")
      ->check(CLI::IsMember({"dot", "json"}))
      ->capture_default_str();
  graph->add_option("--ruleset", graph_args.ruleset, "category ruleset JSON file");
  graph->add_option("--threshold", graph_args.threshold,
                    "minimum inclusive share for DOT nodes")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  graph->add_option("--max-depth", graph_args.max_depth,
                    "hops from the entry point in DOT output");
  graph->add_option("--event", graph_args.event_index, "event index for shares")
      ->capture_default_str();

  TopArgs top_args;
  auto* top = app.add_subcommand("top", "rank functions by cost");
  top->add_option("profiles", top_args.profiles, "Callgrind profile parts")
      ->required();
  top->add_option("-n,--count", top_args.count, "rows to print")
      ->capture_default_str();
  top->add_option("--kind", top_args.kind, "self|inclusive")
      ->check(CLI::IsMember({"self", "inclusive"}))
      ->capture_default_str();
  top->add_option("--event", top_args.event_index, "event index")
      ->capture_default_str();

  MatchArgs match_args;
  auto* match = app.add_subcommand(
      "match", "match a profile against a reference architecture");
  match->add_option("profile", match_args.profile, "Callgrind profile")
      ->required();
  match->add_option("REFERENCE", match_args.reference_positional,
                    "reference architecture JSON file");
  match->add_option("--reference", match_args.reference_flag,
                    "reference architecture JSON file (overrides the positional)");
  match->add_option("--fuzzy-threshold", match_args.fuzzy_threshold,
                    "token-set Jaccard acceptance threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  match->add_option("--format", match_args.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  CompareArgs compare_args;
  auto* cmp = app.add_subcommand("compare", "diff the anatomy of two systems");
  cmp->add_option("left", compare_args.left, "left profile")
      ->required();
  cmp->add_option("right", compare_args.right, "right profile")
      ->required();
  cmp->add_option("--ruleset", compare_args.ruleset, "category ruleset JSON file");
  cmp->add_option("--level", compare_args.level, "class|file")
      ->check(CLI::IsMember({"class", "file"}))
      ->capture_default_str();
  cmp->add_option("--format", compare_args.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmp->add_option("--fuzzy-threshold", compare_args.options.fuzzy_threshold,
                  "token-set Jaccard acceptance threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmp->add_option("--idle-threshold", compare_args.options.idle_threshold,
                  "inclusive share below which a component counts as idle")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmp->add_option("--event", compare_args.options.event_index, "event index")
      ->capture_default_str();

  IncludesArgs includes_args;
  auto* includes = app.add_subcommand(
      "includes", "scan a source tree for #include dependencies");
  includes->add_option("root", includes_args.root, "source tree root")
      ->required();
  includes->add_option("--ext", includes_args.scan.extensions,
                       "file extensions to scan");
  includes->add_option("--include-dir", includes_args.scan.include_dirs,
                       "include search directories (relative to root)");
  includes->add_option("--depth", includes_args.depth,
                       "aggregate by leading path components (0 = files)")
      ->capture_default_str();
  includes->add_flag("--include-unresolved", includes_args.include_unresolved,
                     "keep unresolved includes in aggregation");
  includes->add_option("--format", includes_args.format, "dot|json")
      ->check(CLI::IsMember({"dot", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (inspect->parsed()) return run_inspect(inspect_args);
    if (graph->parsed()) return run_graph(graph_args);
    if (top->parsed()) return run_top(top_args);
    if (match->parsed()) return run_match(match_args);
    if (cmp->parsed()) return run_compare(compare_args);
    if (includes->parsed()) return run_includes(includes_args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
