// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "callanat/emit.hpp"
#include "callanat/parser.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  const std::string command = std::string(CALLANAT_BIN) + " " + args + " 2>&1";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

const std::string kData = CALLANAT_DATA_DIR;
const std::string kFixtures = CALLANAT_FIXTURE_DIR;

}  // namespace

TEST_CASE("inspect prints summary facts") {
  const auto result = run("inspect " + kFixtures + "/basic.cg");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("functions: 2") != std::string::npos);
  CHECK(result.output.find("calls: 1") != std::string::npos);
  CHECK(result.output.find("total Ir: 420") != std::string::npos);
}

TEST_CASE("inspect of an empty profile") {
  const auto result = run("inspect " + kFixtures + "/empty.cg");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("functions: 0") != std::string::npos);
}

TEST_CASE("inspect merges multi-part inputs") {
  const auto result =
      run("inspect " + kFixtures + "/part1.cg " + kFixtures + "/part2.cg");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("total Ir: 120") != std::string::npos);
}

TEST_CASE("missing input exits 2 and names the path") {
  const auto result = run("inspect /no/such/file.cg");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("/no/such/file.cg") != std::string::npos);
}

TEST_CASE("parse errors exit 2 with a line diagnostic") {
  const auto path = std::string("/tmp/callanat_cli_broken.cg");
  std::ofstream(path) << "events: Ir\nfn=f\n1 banana\n";
  const auto result = run("inspect " + path);
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("line 3") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("graph at function level with threshold 0 emits every function") {
  const auto result = run("graph " + kFixtures + "/oracle5.cg --level function "
                          "--threshold 0");
  CHECK(result.exit_code == 0);
  for (const auto* name : {"main", "\"b\\n", "\"c\\n", "\"d\\n", "\"e\\n"})
    CHECK(result.output.find(name) != std::string::npos);
}

TEST_CASE("graph json round-trips to the directly built graph") {
  const auto result =
      run("graph " + kFixtures + "/oracle5.cg --level function --format json");
  REQUIRE(result.exit_code == 0);
  const auto direct = callanat::build_graph(
      callanat::parse_profile_file(kFixtures + "/oracle5.cg"));
  CHECK(callanat::callgraph_from_json(result.output) == direct);
}

TEST_CASE("graph rejects a malformed ruleset with exit 3") {
  const auto path = std::string("/tmp/callanat_cli_ruleset.json");
  std::ofstream(path) << "{\"rules\": \"not-an-array\"}";
  const auto result =
      run("graph " + kFixtures + "/basic.cg --ruleset " + path);
  CHECK(result.exit_code == 3);
  std::remove(path.c_str());
}

TEST_CASE("scenario DOT colors the expected classes") {
  const auto result = run("graph " + kData + "/godot-scenario.cg --threshold 0");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("Main\\n") != std::string::npos);
  CHECK(result.output.find("X11Window\\n") != std::string::npos);
  CHECK(result.output.find("fillcolor=\"red\"") != std::string::npos);
  CHECK(result.output.find("fillcolor=\"orange\"") != std::string::npos);
  CHECK(result.output.find("fillcolor=\"blue\"") != std::string::npos);
}

TEST_CASE("match report against the shipped reference") {
  const auto result = run("match " + kData + "/godot-scenario.cg " + kData +
                          "/godot-layers-reference.json --format json");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  for (const auto& entry : doc.at("results")) {
    CAPTURE(entry.at("component").get<std::string>());
    CHECK(entry.at("tier") != "unmatched");
  }
}

TEST_CASE("match needs a reference") {
  const auto result = run("match " + kData + "/godot-scenario.cg");
  CHECK(result.exit_code == 3);
}

TEST_CASE("malformed reference exits 3") {
  const auto path = std::string("/tmp/callanat_cli_ref.json");
  std::ofstream(path) << "{\"name\": 42}";
  const auto result = run("match " + kData + "/godot-scenario.cg " + path);
  CHECK(result.exit_code == 3);
  std::remove(path.c_str());
}

TEST_CASE("compare reports the scenario inversion as json") {
  const auto result = run("compare " + kData + "/godot-scenario.cg " + kData +
                          "/urho3d-scenario.cg --format json");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  REQUIRE(doc.at("order_inversions").size() == 1);
  CHECK(doc.at("order_inversions")[0][0] == "graphics");
  CHECK(doc.at("order_inversions")[0][1] == "window-system");
  bool registration_common = false;
  for (const auto& category : doc.at("categories").at("common"))
    registration_common |= category == "class-registration";
  CHECK(registration_common);
}

TEST_CASE("comparing a profile against itself is an empty diff") {
  const auto result = run("compare " + kData + "/godot-scenario.cg " + kData +
                          "/godot-scenario.cg --format json");
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc.at("only_left").empty());
  CHECK(doc.at("only_right").empty());
  CHECK(doc.at("order_inversions").empty());
}

TEST_CASE("includes scans and aggregates the fixture tree") {
  const auto flat = run("includes " + kFixtures + "/include_tree --format json");
  REQUIRE(flat.exit_code == 0);
  const auto graph = nlohmann::json::parse(flat.output);
  CHECK(graph.at("files").size() == 10);
  CHECK(graph.at("edges").size() == 14);

  const auto dirs =
      run("includes " + kFixtures + "/include_tree --depth 1 --format json");
  REQUIRE(dirs.exit_code == 0);
  const auto doc = nlohmann::json::parse(dirs.output);
  CHECK(doc.at("nodes").size() == 4);
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::string command = "compare " + kData + "/godot-scenario.cg " + kData +
                              "/urho3d-scenario.cg --format json";
  const auto first = run(command);
  const auto second = run(command);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
}

TEST_CASE("config files supply option defaults") {
  const auto path = std::string("/tmp/callanat_cli_config.ini");
  std::ofstream(path) << "[top]\ncount=1\n";
  const auto result =
      run("--config " + path + " top " + kFixtures + "/basic.cg");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("helper") != std::string::npos);
  CHECK(result.output.find("main") == std::string::npos);  // only one row
  std::remove(path.c_str());
}
