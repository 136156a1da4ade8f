// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "callanat/include_graph.hpp"

using namespace callanat;
namespace fs = std::filesystem;

namespace {

const fs::path kTree = fs::path(CALLANAT_FIXTURE_DIR) / "include_tree";

nlohmann::json load_manifest() {
  std::ifstream in(fs::path(CALLANAT_FIXTURE_DIR) / "include_tree_manifest.json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("fixture tree scan reproduces the manifest") {
  const auto manifest = load_manifest();
  const auto graph = scan_includes(kTree);

  CHECK(graph.files.size() == manifest.at("file_count").get<std::size_t>());
  CHECK(graph.issues.empty());

  std::vector<IncludeEdge> expected;
  for (const auto& e : manifest.at("edges"))
    expected.push_back(IncludeEdge{
        e.at("includer").get<std::string>(), e.at("included").get<std::string>(),
        e.at("kind").get<std::string>() == "angled" ? IncludeKind::Angled
                                                    : IncludeKind::Quoted,
        e.at("resolved").get<bool>()});
  std::sort(expected.begin(), expected.end());
  CHECK(graph.edges == expected);
}

TEST_CASE("directory aggregation at depth 1 matches the manifest") {
  const auto manifest = load_manifest();
  const auto graph = scan_includes(kTree);
  const auto dirs = aggregate_dirs(graph, 1);

  std::vector<std::string> labels;
  for (const auto& node : dirs.nodes) labels.push_back(node.label);
  CHECK(labels == manifest.at("directories_depth1").at("nodes")
                      .get<std::vector<std::string>>());

  std::map<std::pair<std::string, std::string>, std::uint64_t> got;
  for (const auto& edge : dirs.edges)
    got[{dirs.nodes[edge.source].label, dirs.nodes[edge.target].label}] = edge.count;
  std::map<std::pair<std::string, std::string>, std::uint64_t> want;
  for (const auto& e : manifest.at("directories_depth1").at("edges"))
    want[{e.at("source").get<std::string>(), e.at("target").get<std::string>()}] =
        e.at("count").get<std::uint64_t>();
  CHECK(got == want);

  SUBCASE("multiplicity is conserved") {
    std::size_t resolved = 0;
    for (const auto& edge : graph.edges) resolved += edge.resolved;
    std::uint64_t total = 0;
    for (const auto& edge : dirs.edges) total += edge.count;
    CHECK(total == resolved);
  }
}

TEST_CASE("cycle detection finds exactly the manifest cycle") {
  const auto manifest = load_manifest();
  const auto cycles = find_cycles(scan_includes(kTree));
  std::vector<std::vector<std::string>> expected;
  for (const auto& cycle : manifest.at("cycles"))
    expected.push_back(cycle.get<std::vector<std::string>>());
  CHECK(cycles == expected);
}

TEST_CASE("scanning is idempotent") {
  CHECK(scan_includes(kTree) == scan_includes(kTree));
}

TEST_CASE("mutual includes report one two-file cycle") {
  const auto tmp = fs::temp_directory_path() / "callanat_mutual_scan";
  fs::create_directories(tmp);
  std::ofstream(tmp / "a.h") << "#include \"b.h\"\n";
  std::ofstream(tmp / "b.h") << "#include \"a.h\"\n";
  std::ofstream(tmp / "c.h") << "#include \"a.h\"\n";
  const auto cycles = find_cycles(scan_includes(tmp));
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0] == std::vector<std::string>{"a.h", "b.h"});
  fs::remove_all(tmp);
}

TEST_CASE("empty directory gives an empty graph") {
  const auto tmp = fs::temp_directory_path() / "callanat_empty_scan";
  fs::create_directories(tmp);
  const auto graph = scan_includes(tmp);
  CHECK(graph.files.empty());
  CHECK(graph.edges.empty());
  CHECK(find_cycles(graph).empty());
  fs::remove_all(tmp);
}

TEST_CASE("commented includes never count") {
  const auto tmp = fs::temp_directory_path() / "callanat_comment_scan";
  fs::create_directories(tmp);
  {
    std::ofstream out(tmp / "only_comment.cpp");
    out << "// #include \"x.h\"\n";
  }
  const auto graph = scan_includes(tmp);
  CHECK(graph.files == std::vector<std::string>{"only_comment.cpp"});
  CHECK(graph.edges.empty());
  fs::remove_all(tmp);
}

TEST_CASE("angled includes resolve through include dirs only") {
  const auto tmp = fs::temp_directory_path() / "callanat_angle_scan";
  fs::create_directories(tmp / "inc");
  {
    std::ofstream(tmp / "inc" / "lib.h") << "int x;\n";
    std::ofstream(tmp / "a.cpp") << "#include <lib.h>\n#include \"lib.h\"\n";
  }
  SUBCASE("without include dirs both stay unresolved") {
    const auto graph = scan_includes(tmp);
    for (const auto& edge : graph.edges) CHECK_FALSE(edge.resolved);
  }
  SUBCASE("with an include dir both resolve") {
    ScanOptions options;
    options.include_dirs = {"inc"};
    const auto graph = scan_includes(tmp, options);
    REQUIRE(graph.edges.size() == 2);
    for (const auto& edge : graph.edges) {
      CHECK(edge.resolved);
      CHECK(edge.included == "inc/lib.h");
    }
  }
  fs::remove_all(tmp);
}

TEST_CASE("extension filter narrows the node set") {
  ScanOptions options;
  options.extensions = {".cpp"};
  const auto graph = scan_includes(kTree, options);
  CHECK(graph.files == std::vector<std::string>{"core/util.cpp", "main.cpp",
                                                "render/r.cpp"});
  // headers are no longer scanned, so nothing resolves to them
  for (const auto& edge : graph.edges) CHECK_FALSE(edge.resolved);
}

TEST_CASE("aggregate_dirs folds unresolved names into an external bucket") {
  const auto graph = scan_includes(kTree);
  const auto dirs = aggregate_dirs(graph, 1, true);
  const auto* external = dirs.find("<external>");
  REQUIRE(external != nullptr);
  CHECK(external->members.size() == 3);  // vector, stdio.h, GL/gl.h
}

TEST_CASE("depth beyond the tree keeps one group per directory") {
  const auto graph = scan_includes(kTree);
  const auto deep = aggregate_dirs(graph, 9);
  std::vector<std::string> labels;
  for (const auto& node : deep.nodes) labels.push_back(node.label);
  CHECK(labels == std::vector<std::string>{".", "core", "cyc", "render"});
}

TEST_CASE("aggregate_dirs validates depth") {
  CHECK_THROWS_AS(aggregate_dirs(IncludeGraph{}, 0), std::invalid_argument);
}
