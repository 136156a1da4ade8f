// SPDX-License-Identifier: Apache-2.0
#include "callanat/parser.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace callanat {

namespace {

std::string_view ltrim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string_view trim(std::string_view s) { return rtrim(ltrim(s)); }

bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s.remove_prefix(2);
    base = 16;
  }
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out, base);
  return ec == std::errc{} && ptr == end;
}

// Three independent compression-id namespaces: objects, files, functions.
struct NameTable {
  std::unordered_map<std::uint64_t, std::string> by_id;
};

struct Parser {
  explicit Parser(std::istream& stream) : in(stream) {}

  std::istream& in;
  Profile profile;

  std::size_t line_no = 0;
  std::size_t next_record_index = 0;
  bool saw_events = false;
  std::size_t n_positions = 1;  // from `positions:`; default `line`

  // current fn context
  std::string cur_object;
  std::string cur_file;
  FunctionRecord* cur = nullptr;
  std::vector<std::uint64_t> last_pos;  // per subposition, reset on fn=

  // callee context for the next calls= line
  std::optional<std::string> callee_object;
  std::optional<std::string> callee_file;
  std::optional<FunctionKey> pending_callee;
  std::optional<std::uint64_t> pending_count;

  NameTable objects, files, functions;

  [[noreturn]] void fail(std::string_view token, const std::string& msg) const {
    throw SyntaxError(line_no, std::string(token),
                      "line " + std::to_string(line_no) + ": " + msg +
                          (token.empty() ? "" : " ('" + std::string(token) + "')"));
  }

  // `(id) name` define / `(id)` reference / bare `name`.
  std::string resolve_name(std::string_view rest, NameTable& table) {
    rest = ltrim(rest);
    if (rest.size() >= 3 && rest.front() == '(') {
      const auto close = rest.find(')');
      if (close != std::string_view::npos) {
        const auto digits = rest.substr(1, close - 1);
        std::uint64_t id = 0;
        if (!digits.empty() && parse_u64(digits, id)) {
          const auto name = trim(rest.substr(close + 1));
          if (name.empty()) {
            const auto it = table.by_id.find(id);
            if (it == table.by_id.end())
              fail(rest.substr(0, close + 1), "reference to undefined compression id");
            return it->second;
          }
          auto [it, inserted] = table.by_id.emplace(id, std::string(name));
          if (!inserted && it->second != name)
            fail(rest.substr(0, close + 1), "compression id redefined with a different name");
          return std::string(name);
        }
      }
    }
    return std::string(rtrim(rest));
  }

  FunctionRecord& touch(const FunctionKey& key) {
    auto [it, inserted] = profile.functions.try_emplace(key);
    if (inserted) {
      it->second.first_record_index = next_record_index++;
      it->second.self.assign(profile.events.size(), 0);
    }
    return it->second;
  }

  void handle_header(std::string_view key, std::string_view value) {
    if (key == "events") {
      EventSpec spec;
      std::istringstream ss{std::string(value)};
      std::string name;
      while (ss >> name) {
        for (const auto& existing : spec.names)
          if (existing == name) fail(name, "duplicate event name");
        spec.names.push_back(name);
      }
      if (spec.names.empty()) fail(value, "events: line declares no events");
      if (saw_events && spec.names != profile.events.names)
        fail(value, "events redeclared with a different layout");
      spec.derived = std::move(profile.events.derived);
      profile.events = std::move(spec);
      saw_events = true;
    } else if (key == "event") {
      // `event: Name = formula`; lines without '=' only describe an event.
      const auto eq = value.find('=');
      if (eq != std::string_view::npos) {
        DerivedEvent d{std::string(trim(value.substr(0, eq))),
                       std::string(trim(value.substr(eq + 1)))};
        if (d.name.empty()) fail(value, "derived event without a name");
        profile.events.derived.push_back(std::move(d));
      }
    } else if (key == "positions") {
      std::size_t count = 0;
      std::istringstream ss{std::string(value)};
      std::string tok;
      while (ss >> tok) {
        if (tok != "instr" && tok != "line") fail(tok, "unknown position kind");
        ++count;
      }
      if (count == 0 || count > 2) fail(value, "positions: expects 'instr' and/or 'line'");
      n_positions = count;
    } else if (key == "summary" || key == "totals") {
      CostVector values;
      std::istringstream ss{std::string(value)};
      std::string tok;
      while (ss >> tok) {
        std::uint64_t v = 0;
        if (!parse_u64(tok, v)) fail(tok, "non-numeric summary value");
        values.push_back(v);
      }
      profile.summary = std::move(values);
    } else {
      auto [it, inserted] = profile.header.emplace(key, std::string(value));
      if (!inserted) {
        it->second += '\n';
        it->second += value;
      }
    }
  }

  void handle_cost_line(std::string_view line) {
    if (!saw_events) fail(line.substr(0, line.find(' ')), "cost line before events:");
    if (cur == nullptr)
      fail(line.substr(0, line.find(' ')), "cost line before any fn= directive");

    std::istringstream ss{std::string(line)};
    std::string tok;
    last_pos.resize(n_positions, 0);
    for (std::size_t i = 0; i < n_positions; ++i) {
      if (!(ss >> tok)) fail(line, "incomplete position specification");
      std::uint64_t value = 0;
      if (tok == "*") {
        value = last_pos[i];
      } else if (tok[0] == '+' || tok[0] == '-') {
        std::uint64_t diff = 0;
        if (!parse_u64(std::string_view(tok).substr(1), diff))
          fail(tok, "malformed relative position");
        if (tok[0] == '+') {
          value = last_pos[i] + diff;
        } else {
          if (diff > last_pos[i]) fail(tok, "relative position underflows");
          value = last_pos[i] - diff;
        }
      } else {
        if (!parse_u64(tok, value)) fail(tok, "malformed position");
      }
      last_pos[i] = value;
    }

    CostVector values;
    values.reserve(profile.events.size());
    while (ss >> tok) {
      std::uint64_t v = 0;
      if (!parse_u64(tok, v)) fail(tok, "non-numeric cost value");
      if (values.size() == profile.events.size())
        fail(tok, "cost line has more values than declared events");
      values.push_back(v);
    }
    values.resize(profile.events.size(), 0);

    if (pending_count) {
      cur->calls.push_back(CallRecord{*pending_callee, *pending_count, std::move(values)});
      pending_count.reset();
      pending_callee.reset();
    } else {
      accumulate(cur->self, values);
    }
  }

  void handle_directive(std::string_view key, std::string_view rest,
                        std::string_view line) {
    if (key == "ob") {
      cur_object = resolve_name(rest, objects);
      cur = nullptr;  // a new object invalidates the current function
    } else if (key == "fl" || key == "fi" || key == "fe") {
      cur_file = resolve_name(rest, files);
    } else if (key == "fn") {
      const auto name = resolve_name(rest, functions);
      if (name.empty()) fail(rest, "empty function name");
      cur = &touch(FunctionKey{cur_object, cur_file, name});
      last_pos.assign(n_positions, 0);
      callee_object.reset();
      callee_file.reset();
      pending_callee.reset();
    } else if (key == "cob") {
      callee_object = resolve_name(rest, objects);
    } else if (key == "cfl" || key == "cfi") {
      callee_file = resolve_name(rest, files);
    } else if (key == "cfn") {
      const auto name = resolve_name(rest, functions);
      if (name.empty()) fail(rest, "empty callee function name");
      FunctionKey key_{callee_object.value_or(cur_object),
                       callee_file.value_or(cur_file), name};
      touch(key_);
      pending_callee = std::move(key_);
    } else if (key == "calls") {
      if (cur == nullptr) fail(line, "calls= before any fn= directive");
      if (!pending_callee) fail(line, "calls= without a preceding cfn=");
      auto value = ltrim(rest);
      const auto end = value.find_first_of(" \t");
      const auto count_tok = value.substr(0, end);
      std::uint64_t count = 0;
      if (!parse_u64(count_tok, count)) fail(count_tok, "malformed call count");
      if (count == 0) fail(count_tok, "call count must be positive");
      pending_count = count;
      // target position is parsed and discarded
      callee_object.reset();
      callee_file.reset();
    } else if (key == "jfi" || key == "jfn") {
      // jump target context is discarded, but it can define compression ids
      // that later fi=/fn= lines reference
      resolve_name(rest, key == "jfi" ? files : functions);
    } else if (key == "jump" || key == "jcnd") {
      // jump coverage carries no per-function cost; the position-only line
      // that follows parses as a zero-cost line
    } else {
      fail(key, "unknown directive");
    }
  }

  Profile run() {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::string_view line = trim(raw);
      if (line.empty()) continue;
      if (line.front() == '#') continue;

      const char c = line.front();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
          c == '*') {
        handle_cost_line(line);
        continue;
      }
      if (pending_count) fail(line, "calls= must be followed by a cost line");

      const auto eq = line.find('=');
      const auto colon = line.find(':');
      if (eq != std::string_view::npos && (colon == std::string_view::npos || eq < colon)) {
        const auto key = line.substr(0, eq);
        for (const char k : key)
          if (!std::isalnum(static_cast<unsigned char>(k)) && k != '_')
            fail(key, "unknown directive");
        handle_directive(key, line.substr(eq + 1), line);
      } else if (colon != std::string_view::npos) {
        handle_header(trim(line.substr(0, colon)), trim(line.substr(colon + 1)));
      } else {
        fail(line, "unrecognized line");
      }
    }

    if (pending_count)
      throw SyntaxError(line_no, "", "calls= at end of file without its cost line");
    if (!saw_events) throw EmptyProfile("no events: line found");

    for (auto& [key, rec] : profile.functions)
      rec.self.resize(profile.events.size(), 0);
    if (profile.summary) profile.summary->resize(profile.events.size(), 0);
    return std::move(profile);
  }
};

}  // namespace

SyntaxError::SyntaxError(std::size_t line, std::string token, const std::string& what)
    : ProfileError(what), line_(line), token_(std::move(token)) {}

Profile parse_profile(std::istream& in) {
  Parser parser(in);
  return parser.run();
}

Profile parse_profile_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open profile file: " + path.string());
  return parse_profile(in);
}

}  // namespace callanat
