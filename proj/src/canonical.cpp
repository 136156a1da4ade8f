// SPDX-License-Identifier: Apache-2.0
#include <map>
#include <sstream>

#include "callanat/parser.hpp"

namespace callanat {

namespace {

// Header keys that read better in the conventional order.
constexpr const char* kPreferredHeaderOrder[] = {"version", "creator", "pid",
                                                 "cmd", "part"};

void emit_header_line(std::ostream& out, const std::string& key,
                      const std::string& value) {
  // Multi-valued keys (desc:) were joined with '\n' at parse time.
  std::size_t start = 0;
  while (true) {
    const auto nl = value.find('\n', start);
    out << key << ": " << value.substr(start, nl - start) << '\n';
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
}

void emit_costs(std::ostream& out, const CostVector& values) {
  for (const auto v : values) out << ' ' << v;
  out << '\n';
}

struct ContextWriter {
  explicit ContextWriter(std::ostream& stream) : out(stream) {}

  std::ostream& out;
  std::string object;
  std::string file;

  void switch_to(const FunctionKey& key) {
    if (key.object != object) {
      out << "ob=" << key.object << '\n';
      object = key.object;
    }
    if (key.file != file) {
      out << "fl=" << key.file << '\n';
      file = key.file;
    }
    out << "fn=" << key.name << '\n';
  }
};

}  // namespace

std::string write_canonical(const Profile& profile) {
  std::ostringstream out;

  auto preferred = [](const std::string& key) {
    for (const auto* k : kPreferredHeaderOrder)
      if (key == k) return true;
    return false;
  };
  for (const auto* key : kPreferredHeaderOrder) {
    const auto it = profile.header.find(key);
    if (it != profile.header.end()) emit_header_line(out, it->first, it->second);
  }
  for (const auto& [key, value] : profile.header)
    if (!preferred(key)) emit_header_line(out, key, value);

  out << "events:";
  for (const auto& name : profile.events.names) out << ' ' << name;
  out << '\n';
  for (const auto& d : profile.events.derived)
    out << "event: " << d.name << " = " << d.formula << '\n';

  const auto order = profile.record_order();

  // Pre-declare every function so re-parsing reproduces first_record_index
  // even when a callee is first mentioned inside an earlier caller's block.
  // The same writer carries the ob/fl context into the cost blocks.
  out << '\n';
  ContextWriter body(out);
  for (const auto* key : order) body.switch_to(*key);

  for (const auto* key : order) {
    const auto& rec = profile.functions.at(*key);
    bool has_self = false;
    for (const auto v : rec.self) has_self |= v != 0;
    if (!has_self && rec.calls.empty()) continue;

    out << '\n';
    body.switch_to(*key);
    if (has_self) {
      out << 0;
      emit_costs(out, rec.self);
    }
    for (const auto& call : rec.calls) {
      if (call.callee.object != body.object)
        out << "cob=" << call.callee.object << '\n';
      if (call.callee.file != body.file) out << "cfl=" << call.callee.file << '\n';
      out << "cfn=" << call.callee.name << '\n';
      out << "calls=" << call.count << " 0\n";
      out << 0;
      emit_costs(out, call.cost);
    }
  }

  if (profile.summary) {
    out << "\nsummary:";
    emit_costs(out, *profile.summary);
  }
  return out.str();
}

Profile merge_parts(const std::vector<Profile>& parts) {
  if (parts.empty()) throw std::invalid_argument("merge_parts: no parts given");
  if (parts.size() == 1) return parts.front();

  for (const auto& part : parts)
    if (part.events.names != parts.front().events.names)
      throw EventMismatch("parts declare different event layouts");

  Profile merged;
  merged.events = parts.front().events;

  // First part wins on header keys; `part:` values are collected in order.
  std::vector<std::string> part_ids;
  for (const auto& part : parts) {
    for (const auto& [key, value] : part.header) {
      if (key == "part") {
        part_ids.push_back(value);
        continue;
      }
      merged.header.emplace(key, value);
    }
  }
  if (!part_ids.empty()) {
    std::string joined;
    for (const auto& id : part_ids) {
      if (!joined.empty()) joined += ", ";
      joined += id;
    }
    merged.header["part"] = joined;
  }

  const auto n_events = merged.events.size();
  std::size_t next_index = 0;
  for (const auto& part : parts) {
    for (const auto* key : part.record_order()) {
      const auto& rec = part.functions.at(*key);
      auto [it, inserted] = merged.functions.try_emplace(*key);
      auto& target = it->second;
      if (inserted) {
        target.first_record_index = next_index++;
        target.self.assign(n_events, 0);
      }
      accumulate(target.self, rec.self);
      for (const auto& call : rec.calls) {
        CallRecord* existing = nullptr;
        for (auto& candidate : target.calls)
          if (candidate.callee == call.callee) existing = &candidate;
        if (existing == nullptr) {
          target.calls.push_back(CallRecord{call.callee, 0, CostVector(n_events, 0)});
          existing = &target.calls.back();
        }
        existing->count += call.count;
        accumulate(existing->cost, call.cost);
      }
    }
  }

  bool all_have_summary = true;
  for (const auto& part : parts) all_have_summary &= part.summary.has_value();
  if (all_have_summary) {
    CostVector total(n_events, 0);
    for (const auto& part : parts) accumulate(total, *part.summary);
    merged.summary = std::move(total);
  }
  return merged;
}

}  // namespace callanat
