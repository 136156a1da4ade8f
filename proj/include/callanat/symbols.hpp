// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace callanat {

// Structural decomposition of a demangled C++ symbol name.
struct SymbolParts {
  std::string raw;
  std::vector<std::string> scope_path;  // namespaces and classes, outermost first
  std::string leaf;                     // function/method name, never empty
  bool had_template_args = false;
  bool had_signature = false;

  // scope_path joined with "::", empty for free functions
  std::string scope_label() const;
};

// Splits on "::" only at angle-bracket and parenthesis depth 0, strips one
// trailing "(...)" signature (plus cv/ref qualifiers) and "<...>" template
// arguments per segment. "operator()" and friends are leaves, not signatures.
// Unbalanced brackets degrade gracefully: the remainder past the last clean
// split becomes an opaque leaf with both flags false.
SymbolParts parse_symbol(std::string_view raw);

}  // namespace callanat
