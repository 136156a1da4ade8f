// SPDX-License-Identifier: Apache-2.0
#include "callanat/symbols.hpp"

#include <cctype>
#include <stdexcept>

namespace callanat {

namespace {

bool is_ident(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

constexpr std::string_view kOperatorPunct = "+-*/%^&|~!=<>,";

// Marks characters that belong to a punctuation operator name
// ("operator<<", "operator()", "operator[]", ...) so the depth scanner and
// the strippers treat them as plain text.
std::vector<bool> operator_mask(std::string_view raw) {
  std::vector<bool> mask(raw.size(), false);
  bool segment_start = true;
  for (std::size_t i = 0; i < raw.size();) {
    if (segment_start && raw.compare(i, 8, "operator") == 0 &&
        (i + 8 == raw.size() || !is_ident(raw[i + 8]))) {
      std::size_t p = i + 8;
      if (raw.compare(p, 2, "()") == 0 || raw.compare(p, 2, "[]") == 0) {
        mask[p] = mask[p + 1] = true;
        p += 2;
      } else {
        while (p < raw.size() && kOperatorPunct.find(raw[p]) != std::string_view::npos)
          mask[p++] = true;
      }
      segment_start = false;
      i = p;
      continue;
    }
    if (raw.compare(i, 2, "::") == 0) {
      segment_start = true;
      i += 2;
      continue;
    }
    segment_start = false;
    ++i;
  }
  return mask;
}

// Removes every balanced <...> group that opens at local depth 0.
std::string strip_templates(std::string_view segment, const std::vector<bool>& mask,
                            std::size_t offset, bool& stripped_any) {
  std::string out;
  bool stripped_here = false;
  int angle = 0;
  int paren = 0;
  for (std::size_t i = 0; i < segment.size(); ++i) {
    const char c = segment[i];
    const bool masked = mask[offset + i];
    if (!masked && paren == 0) {
      if (c == '<') {
        ++angle;
        stripped_here = true;
        continue;
      }
      if (c == '>') {
        if (angle > 0) --angle;
        continue;
      }
    }
    if (angle > 0) continue;
    if (!masked) {
      if (c == '(') ++paren;
      if (c == ')' && paren > 0) --paren;
    }
    out += c;
  }
  if (stripped_here && out.empty()) return std::string(segment);
  stripped_any |= stripped_here;
  return out;
}

bool is_qualifier_suffix(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    if (i >= s.size()) break;
    if (s.compare(i, 5, "const") == 0 && (i + 5 == s.size() || s[i + 5] == ' ')) {
      i += 5;
    } else if (s.compare(i, 8, "volatile") == 0 &&
               (i + 8 == s.size() || s[i + 8] == ' ')) {
      i += 8;
    } else if (s.compare(i, 8, "noexcept") == 0 &&
               (i + 8 == s.size() || s[i + 8] == ' ')) {
      i += 8;
    } else if (s[i] == '&') {
      ++i;
      if (i < s.size() && s[i] == '&') ++i;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string SymbolParts::scope_label() const {
  std::string out;
  for (const auto& part : scope_path) {
    if (!out.empty()) out += "::";
    out += part;
  }
  return out;
}

SymbolParts parse_symbol(std::string_view raw) {
  if (raw.empty()) throw std::invalid_argument("parse_symbol: empty symbol");

  SymbolParts parts;
  parts.raw = raw;

  const auto mask = operator_mask(raw);

  // depth-0 "::" split positions
  std::vector<std::size_t> segment_starts{0};
  int depth = 0;
  bool unbalanced = false;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (mask[i]) continue;
    const char c = raw[i];
    if (c == '<' || c == '(') ++depth;
    else if (c == '>' || c == ')') --depth;
    if (depth < 0) {
      unbalanced = true;
      break;
    }
    if (depth == 0 && c == ':' && i + 1 < raw.size() && raw[i + 1] == ':' &&
        !mask[i + 1]) {
      segment_starts.push_back(i + 2);
      ++i;
    }
  }
  if (depth != 0) unbalanced = true;

  if (unbalanced) {
    for (std::size_t s = 0; s + 1 < segment_starts.size(); ++s) {
      const auto begin = segment_starts[s];
      const auto end = segment_starts[s + 1] - 2;
      if (end > begin) parts.scope_path.emplace_back(raw.substr(begin, end - begin));
    }
    parts.leaf = std::string(raw.substr(segment_starts.back()));
    if (parts.leaf.empty()) {
      parts.scope_path.clear();
      parts.leaf = std::string(raw);
    }
    return parts;
  }

  std::vector<std::pair<std::size_t, std::size_t>> segments;  // [begin, end)
  for (std::size_t s = 0; s < segment_starts.size(); ++s) {
    const auto begin = segment_starts[s];
    const auto end =
        s + 1 < segment_starts.size() ? segment_starts[s + 1] - 2 : raw.size();
    segments.emplace_back(begin, end);
  }

  // Strip one trailing "(...)" signature from the last segment, allowing
  // cv/ref qualifiers after the closing parenthesis.
  auto [leaf_begin, leaf_end] = segments.back();
  std::string_view leaf_text = raw.substr(leaf_begin, leaf_end - leaf_begin);
  {
    std::size_t last_close = std::string_view::npos;
    for (std::size_t i = leaf_text.size(); i-- > 0;) {
      if (leaf_text[i] == ')' && !mask[leaf_begin + i]) {
        last_close = i;
        break;
      }
    }
    if (last_close != std::string_view::npos &&
        is_qualifier_suffix(leaf_text.substr(last_close + 1))) {
      int nesting = 0;
      std::size_t open = std::string_view::npos;
      for (std::size_t i = last_close + 1; i-- > 0;) {
        if (mask[leaf_begin + i]) continue;
        if (leaf_text[i] == ')') ++nesting;
        if (leaf_text[i] == '(') {
          --nesting;
          if (nesting == 0) {
            open = i;
            break;
          }
        }
      }
      if (open != std::string_view::npos && open > 0) {
        leaf_text = leaf_text.substr(0, open);
        while (!leaf_text.empty() && leaf_text.back() == ' ')
          leaf_text.remove_suffix(1);
        parts.had_signature = true;
      }
    }
  }

  for (std::size_t s = 0; s + 1 < segments.size(); ++s) {
    const auto [begin, end] = segments[s];
    if (end == begin) continue;  // leading "::" or doubled separators
    parts.scope_path.push_back(strip_templates(raw.substr(begin, end - begin), mask,
                                               begin, parts.had_template_args));
  }
  parts.leaf =
      strip_templates(leaf_text, mask, leaf_begin, parts.had_template_args);
  if (parts.leaf.empty()) parts.leaf = std::string(leaf_text);
  if (parts.leaf.empty()) parts.leaf = parts.raw;
  return parts;
}

}  // namespace callanat
