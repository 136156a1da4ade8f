// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one criterion per function, one PASS/FAIL/SKIP line per
// criterion on stdout. Exit code is the number of failed criteria.
// `acceptance <n>` runs a single criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "callanat/comparison.hpp"
#include "callanat/emit.hpp"
#include "callanat/parser.hpp"
#include "support/dot_validator.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace callanat;
namespace fs = std::filesystem;

namespace {

const std::string kData = CALLANAT_DATA_DIR;
const std::string kFixtures = CALLANAT_FIXTURE_DIR;

struct Check {
  std::vector<std::string> failures;
  bool skipped = false;
  std::string skip_reason;

  void expect(bool condition, const std::string& what) {
    if (!condition) failures.push_back(what);
  }
  void skip(const std::string& reason) {
    skipped = true;
    skip_reason = reason;
  }
};

struct Command {
  int exit_code = -1;
  std::string output;
};

Command run_command(const std::string& command_line) {
  Command result;
  std::array<char, 4096> buffer{};
  FILE* pipe = popen((command_line + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return result;
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string cli() { return CALLANAT_BIN; }

// 1. Parser conservation: sum of self costs equals the summary, exactly,
//    across a fixture suite that covers compression and multi-part files.
void criterion_conservation(Check& check) {
  const std::vector<std::string> fixtures{
      kFixtures + "/basic.cg",        kFixtures + "/empty.cg",
      kFixtures + "/compressed.cg",   kFixtures + "/events-multi.cg",
      kFixtures + "/oracle5.cg",      kData + "/godot-scenario.cg",
      kData + "/urho3d-scenario.cg"};
  for (const auto& path : fixtures) {
    const auto profile = parse_profile_file(path);
    check.expect(profile.summary.has_value(), path + ": no summary");
    if (profile.summary)
      check.expect(profile.total_self() == *profile.summary,
                   path + ": self costs do not sum to the summary");
  }
  const auto merged = merge_parts({parse_profile_file(kFixtures + "/part1.cg"),
                                   parse_profile_file(kFixtures + "/part2.cg")});
  check.expect(merged.summary.has_value(), "merged parts lost the summary");
  check.expect(merged.total_self() == *merged.summary,
               "multi-part merge broke conservation");
}

// 2. parse(write_canonical(p)) == p over at least 200 generated profiles.
void criterion_round_trip(Check& check) {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 250; ++i) {
    const auto profile = callanat::testing::random_profile(rng);
    std::istringstream in(write_canonical(profile));
    const auto reparsed = parse_profile(in);
    if (!(reparsed == profile)) {
      check.expect(false, "round trip diverged at iteration " + std::to_string(i));
      return;
    }
  }
}

// 3. Inclusive costs on the 5-node fixture equal a brute-force expansion of
//    the designed call tree.
void criterion_inclusive_oracle(Check& check) {
  struct Design {
    Cost per_call_self;
    std::vector<std::pair<std::string, std::uint64_t>> children;
  };
  const std::map<std::string, Design> design{
      {"main", {10, {{"b", 2}, {"c", 1}}}}, {"b", {3, {{"d", 2}, {"c", 1}}}},
      {"c", {11, {{"e", 1}}}},              {"d", {5, {{"e", 2}}}},
      {"e", {7, {}}},
  };

  // expand the whole call tree; count self cost per function and per subtree
  std::map<std::string, Cost> inclusive_total;
  std::map<std::string, Cost> self_total;
  auto walk = [&](auto&& self, const std::string& name) -> Cost {
    Cost subtree = design.at(name).per_call_self;
    self_total[name] += design.at(name).per_call_self;
    for (const auto& [child, count] : design.at(name).children)
      for (std::uint64_t k = 0; k < count; ++k) subtree += self(self, child);
    inclusive_total[name] += subtree;
    return subtree;
  };
  walk(walk, "main");

  const auto graph = build_graph(parse_profile_file(kFixtures + "/oracle5.cg"));
  for (const auto& [name, want] : inclusive_total) {
    const auto* node = graph.find(FunctionKey{"", "", name});
    check.expect(node != nullptr, name + " missing from the graph");
    if (node != nullptr) {
      check.expect(node->inclusive == CostVector{want},
                   name + ": inclusive cost differs from the call-tree oracle");
      check.expect(node->self == CostVector{self_total.at(name)},
                   name + ": self cost differs from the call-tree oracle");
    }
  }
}

// 4. Tarjan-based SCC partition equals the transitive-closure brute force on
//    at least 100 random graphs of up to 50 nodes.
void criterion_scc_oracle(Check& check) {
  std::mt19937_64 rng(20220501);
  for (int trial = 0; trial < 120; ++trial) {
    const double p = trial % 3 == 0 ? 0.02 : (trial % 3 == 1 ? 0.06 : 0.12);
    const auto graph =
        build_graph(callanat::testing::random_digraph_profile(rng, 50, p));
    const auto adjacency = graph.adjacency();
    const auto expected = callanat::testing::closure_sccs(adjacency);

    std::map<std::size_t, std::set<std::size_t>> by_id;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i)
      by_id[graph.nodes[i].scc_id].insert(i);
    std::set<std::set<std::size_t>> got;
    for (const auto& [id, members] : by_id) got.insert(members);
    const std::set<std::set<std::size_t>> want(expected.begin(), expected.end());
    if (got != want) {
      check.expect(false, "partition mismatch at trial " + std::to_string(trial));
      return;
    }
  }
}

// 5. `compare godot-scenario.cg urho3d-scenario.cg` reports the
//    (graphics, window-system) inversion and class-registration in common.
void criterion_scenario_comparison(Check& check) {
  const auto result =
      run_command(cli() + " compare " + kData + "/godot-scenario.cg " + kData +
                  "/urho3d-scenario.cg --format json");
  check.expect(result.exit_code == 0, "compare exited nonzero");
  if (result.exit_code != 0) return;

  const auto doc = nlohmann::json::parse(result.output);
  const auto& inversions = doc.at("order_inversions");
  check.expect(inversions.size() == 1, "expected exactly one order inversion");
  if (inversions.size() == 1) {
    check.expect(inversions[0][0].get<std::string>() == "graphics",
                 "inversion pair first element");
    check.expect(inversions[0][1].get<std::string>() == "window-system",
                 "inversion pair second element");
  }
  bool registration_common = false;
  for (const auto& category : doc.at("categories").at("common"))
    registration_common |= category.get<std::string>() == "class-registration";
  check.expect(registration_common,
               "class-registration is not reported common to both sides");
}

// 6. `match godot-scenario.cg <layers reference>` matches every component;
//    PhysicsServer at the fuzzy tier, DisplayServer by method evidence.
void criterion_scenario_matching(Check& check) {
  const auto result =
      run_command(cli() + " match " + kData + "/godot-scenario.cg " + kData +
                  "/godot-layers-reference.json --format json");
  check.expect(result.exit_code == 0, "match exited nonzero");
  if (result.exit_code != 0) return;

  const auto doc = nlohmann::json::parse(result.output);
  std::size_t unmatched = 0;
  for (const auto& entry : doc.at("results")) {
    if (entry.at("tier").get<std::string>() == "unmatched") ++unmatched;
    const auto component = entry.at("component").get<std::string>();
    if (component == "PhysicsServer") {
      check.expect(entry.at("tier") == "fuzzy", "PhysicsServer tier");
      check.expect(entry.at("matched_label") == "Physics2DServer",
                   "PhysicsServer match target");
    }
    if (component == "DisplayServer") {
      check.expect(entry.at("tier") == "method-evidence", "DisplayServer tier");
      check.expect(entry.at("matched_label") == "OS", "DisplayServer match target");
    }
  }
  check.expect(unmatched == 0, std::to_string(unmatched) + " components unmatched");
  check.expect(doc.at("results").size() == 8, "reference component count");
}

// 7. Raising the DOT threshold never increases the node count; every output
//    passes the DOT grammar validator. 200+ random graphs.
void criterion_dot_monotonicity(Check& check) {
  std::mt19937_64 rng(10301);
  const double ladder[] = {0.0, 0.005, 0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0};
  for (int trial = 0; trial < 220; ++trial) {
    const auto graph = build_graph(callanat::testing::random_profile(rng));
    std::size_t previous = std::numeric_limits<std::size_t>::max();
    for (const double threshold : ladder) {
      DotOptions options;
      options.threshold = threshold;
      const auto dot = emit_dot(graph, options);
      std::size_t nodes = 0;
      const auto verdict = callanat::testing::validate_dot(dot, &nodes);
      if (!verdict.empty()) {
        check.expect(false, "invalid DOT at trial " + std::to_string(trial) + ": " +
                                verdict);
        return;
      }
      if (nodes > previous) {
        check.expect(false, "node count grew with the threshold at trial " +
                                std::to_string(trial));
        return;
      }
      previous = nodes;
    }
  }
}

// 8. The 10-file fixture scan reproduces the manifest's edges, resolution
//    statuses, directory aggregation and the 3-cycle, exactly.
void criterion_include_graph(Check& check) {
  std::ifstream manifest_in(kFixtures + "/include_tree_manifest.json");
  const auto manifest = nlohmann::json::parse(manifest_in);
  const auto graph = scan_includes(kFixtures + "/include_tree");

  check.expect(graph.files.size() == manifest.at("file_count").get<std::size_t>(),
               "scanned file count");

  std::vector<IncludeEdge> expected;
  for (const auto& e : manifest.at("edges"))
    expected.push_back(IncludeEdge{
        e.at("includer").get<std::string>(), e.at("included").get<std::string>(),
        e.at("kind").get<std::string>() == "angled" ? IncludeKind::Angled
                                                    : IncludeKind::Quoted,
        e.at("resolved").get<bool>()});
  std::sort(expected.begin(), expected.end());
  check.expect(graph.edges == expected, "edge set differs from the manifest");

  const auto dirs = aggregate_dirs(graph, 1);
  std::map<std::pair<std::string, std::string>, std::uint64_t> got;
  for (const auto& edge : dirs.edges)
    got[{dirs.nodes[edge.source].label, dirs.nodes[edge.target].label}] = edge.count;
  std::map<std::pair<std::string, std::string>, std::uint64_t> want;
  for (const auto& e : manifest.at("directories_depth1").at("edges"))
    want[{e.at("source").get<std::string>(), e.at("target").get<std::string>()}] =
        e.at("count").get<std::uint64_t>();
  check.expect(got == want, "directory aggregation differs from the manifest");

  std::vector<std::vector<std::string>> cycles_want;
  for (const auto& cycle : manifest.at("cycles"))
    cycles_want.push_back(cycle.get<std::vector<std::string>>());
  check.expect(find_cycles(graph) == cycles_want,
               "cycle report differs from the manifest");
}

// 9. Environment-gated: profile a small C program with Callgrind, parse the
//    produced file, check conservation and a main-rooted entry point.
void criterion_real_profiler(Check& check) {
  if (run_command("valgrind --version").exit_code != 0) {
    check.skip("valgrind not available");
    return;
  }
  if (run_command("cc --version").exit_code != 0) {
    check.skip("no C compiler available");
    return;
  }

  const auto dir = fs::temp_directory_path() / "callanat_acceptance_vg";
  fs::create_directories(dir);
  {
    std::ofstream src(dir / "prog.c");
    src << "#include <stdio.h>\n"
           "\n"
           "static long leaf(long x) {\n"
           "  return x * 3 + 1;\n"
           "}\n"
           "\n"
           "static long work(long n) {\n"
           "  long acc = 0;\n"
           "  for (long i = 0; i < n; i++) {\n"
           "    acc += leaf(i);\n"
           "  }\n"
           "  return acc;\n"
           "}\n"
           "\n"
           "int main(void) {\n"
           "  long total = 0;\n"
           "  for (int round = 0; round < 40; round++) total += work(100000);\n"
           "  printf(\"%ld\\n\", total);\n"
           "  return total == 0;\n"
           "}\n";
  }
  const auto build = run_command("cc -O0 -g -o " + (dir / "prog").string() + " " +
                                 (dir / "prog.c").string());
  if (build.exit_code != 0) {
    check.skip("test program failed to compile");
    return;
  }
  const auto out_file = (dir / "out.cg").string();
  const auto profiled = run_command("valgrind --tool=callgrind -q --callgrind-out-file=" +
                                    out_file + " " + (dir / "prog").string());
  if (profiled.exit_code != 0) {
    check.skip("callgrind run failed: " + profiled.output.substr(0, 200));
    return;
  }

  const auto profile = parse_profile_file(out_file);
  check.expect(profile.summary.has_value(), "callgrind output has no totals");
  if (profile.summary)
    check.expect(profile.total_self() == *profile.summary,
                 "conservation failed on real callgrind output");

  const auto graph = build_graph(profile);
  const auto roots = entry_points(graph);
  check.expect(!roots.empty(), "no entry points found");

  // main must exist and be reachable from the first entry point
  const FunctionNode* main_node = nullptr;
  for (const auto& node : graph.nodes)
    if (node.key.name == "main") main_node = &node;
  check.expect(main_node != nullptr, "no function named main in the profile");
  if (main_node != nullptr && !roots.empty()) {
    std::map<FunctionKey, std::size_t> index;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i)
      index.emplace(graph.nodes[i].key, i);
    const auto adjacency = graph.adjacency();
    std::vector<bool> seen(graph.nodes.size(), false);
    std::vector<std::size_t> stack{index.at(roots.front())};
    seen[stack.back()] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto w : adjacency[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    check.expect(seen[index.at(main_node->key)],
                 "main is not reachable from the first entry point");
    const auto share =
        percent_of_total(graph, main_node->key, CostKind::Inclusive, 0);
    check.expect(share.value() > 0.5,
                 "main's inclusive share is implausibly low: " + share.percent());
  }
  fs::remove_all(dir);
}

struct Criterion {
  int id;
  std::string name;
  std::function<void(Check&)> fn;
  // stated runtime bound, milliseconds; 0 = none
  long budget_ms;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "parser conservation on the fixture suite", criterion_conservation, 1000},
      {2, "canonical round-trip over 250 generated profiles", criterion_round_trip,
       10000},
      {3, "inclusive costs match the call-tree oracle", criterion_inclusive_oracle,
       0},
      {4, "SCC partition equals the closure oracle (120 graphs)",
       criterion_scc_oracle, 0},
      {5, "scenario comparison reproduces the order inversion",
       criterion_scenario_comparison, 0},
      {6, "scenario matching covers the full reference", criterion_scenario_matching,
       0},
      {7, "DOT threshold monotonicity over 220 graphs", criterion_dot_monotonicity,
       0},
      {8, "include scan reproduces the manifest", criterion_include_graph, 1000},
      {9, "real Callgrind round trip (environment-gated)", criterion_real_profiler,
       0},
  };

  int requested = 0;
  if (argc > 1) requested = std::atoi(argv[1]);

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (requested != 0 && criterion.id != requested) continue;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.fn(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const auto elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
    if (criterion.budget_ms != 0 && elapsed_ms > criterion.budget_ms)
      check.expect(false, "exceeded the " + std::to_string(criterion.budget_ms) +
                              " ms budget");

    if (check.skipped) {
      std::cout << "[SKIP] criterion " << criterion.id << ": " << criterion.name
                << " (" << check.skip_reason << ")\n";
      continue;
    }
    if (check.failures.empty()) {
      std::cout << "[PASS] criterion " << criterion.id << ": " << criterion.name
                << " (" << elapsed_ms << " ms)\n";
    } else {
      ++failures;
      std::cout << "[FAIL] criterion " << criterion.id << ": " << criterion.name
                << "\n";
      for (const auto& failure : check.failures)
        std::cout << "       - " << failure << "\n";
    }
  }
  return failures;
}
