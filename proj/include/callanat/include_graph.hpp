// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "callanat/abstract.hpp"

namespace callanat {

enum class IncludeKind { Quoted, Angled };

std::string to_string(IncludeKind kind);

struct IncludeEdge {
  std::string includer;  // path relative to the scan root
  std::string included;  // resolved relative path, or the raw name if not
  IncludeKind kind = IncludeKind::Quoted;
  bool resolved = false;

  friend auto operator<=>(const IncludeEdge&, const IncludeEdge&) = default;
};

struct ScanIssue {
  std::string path;
  std::string message;

  friend bool operator==(const ScanIssue&, const ScanIssue&) = default;
};

// Static #include dependency graph of one source tree. Nodes are the scanned
// files; unresolved includes stay as frontier edges.
struct IncludeGraph {
  std::string scan_root;
  std::vector<std::string> files;  // sorted relative paths
  std::vector<IncludeEdge> edges;  // sorted, deduplicated
  std::vector<ScanIssue> issues;   // per-file IO failures, non-fatal

  friend bool operator==(const IncludeGraph&, const IncludeGraph&) = default;
};

struct ScanOptions {
  std::vector<std::string> extensions = {".h",  ".hpp", ".hh", ".c", ".cc",
                                         ".cpp", ".cxx", ".inl"};
  // Quoted includes resolve against the includer's directory first, then
  // these; angled includes against these only. Relative to the scan root.
  std::vector<std::string> include_dirs;
};

// Textual scan, not preprocessing: // and /* */ comments are stripped with a
// two-state scanner, conditional-compilation branches all count. Resolution
// targets are the scanned files themselves.
IncludeGraph scan_includes(const std::filesystem::path& root,
                           const ScanOptions& options = {});

// Groups files by their first `depth` path components (a file's own
// directory when shallower). Edge multiplicity lands in the count field;
// static graphs carry no costs. Unresolved frontier names group under
// "<external>" when requested.
AbstractGraph aggregate_dirs(const IncludeGraph& graph, std::size_t depth,
                             bool include_unresolved = false);

// One representative cycle per non-singleton SCC, starting at the
// lexicographically smallest file, shortest first by BFS.
std::vector<std::vector<std::string>> find_cycles(const IncludeGraph& graph);

}  // namespace callanat
