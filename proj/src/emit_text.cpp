// SPDX-License-Identifier: Apache-2.0
#include <iomanip>
#include <sstream>

#include "callanat/emit.hpp"

namespace callanat {

std::string emit_text(const ReferenceArchitecture& reference,
                      const std::vector<MatchResult>& results) {
  std::ostringstream out;
  out << "reference: " << reference.name << '\n';
  std::size_t matched = 0;
  for (const auto& result : results) matched += result.matched_label.has_value();
  out << "matched " << matched << " of " << results.size() << " components\n\n";
  for (const auto& result : results) {
    out << std::left << std::setw(24) << result.component << std::setw(17)
        << to_string(result.tier);
    out << std::setw(24) << (result.matched_label ? *result.matched_label : "-");
    out << std::right << std::setw(7) << result.score.percent() << "%";
    if (!result.evidence.empty()) {
      out << "  [";
      for (std::size_t i = 0; i < result.evidence.size(); ++i) {
        if (i != 0) out << ", ";
        out << result.evidence[i];
      }
      out << "]";
    }
    out << '\n';
  }
  return out.str();
}

namespace {

void render_sequence(std::ostringstream& out, const std::string& name,
                     const InitSequence& sequence) {
  out << "initialization sequence (" << name << "):\n";
  for (const auto& step : sequence)
    out << "  " << std::left << std::setw(4)
        << std::to_string(step.first_record_index) << std::setw(28) << step.label
        << step.category << '\n';
}

}  // namespace

std::string emit_text(const ComparisonReport& report) {
  std::ostringstream out;
  out << "comparing " << report.left << " vs " << report.right << "\n\n";

  out << "common components (" << report.common.size() << "):\n";
  for (const auto& entry : report.common)
    out << "  " << std::left << std::setw(28) << entry.left << "~ " << std::setw(28)
        << entry.right << to_string(entry.tier) << '\n';
  out << "only in " << report.left << ":";
  for (const auto& label : report.only_left) out << ' ' << label;
  out << '\n';
  out << "only in " << report.right << ":";
  for (const auto& label : report.only_right) out << ' ' << label;
  out << "\n\n";

  out << "categories common:";
  for (const auto& category : report.categories_common) out << ' ' << category;
  out << '\n';
  if (!report.categories_only_left.empty()) {
    out << "categories only in " << report.left << ":";
    for (const auto& category : report.categories_only_left) out << ' ' << category;
    out << '\n';
  }
  if (!report.categories_only_right.empty()) {
    out << "categories only in " << report.right << ":";
    for (const auto& category : report.categories_only_right) out << ' ' << category;
    out << '\n';
  }
  out << '\n';

  render_sequence(out, report.left, report.left_sequence);
  render_sequence(out, report.right, report.right_sequence);
  out << '\n';

  if (report.order_inversions.empty()) {
    out << "no category order inversions\n";
  } else {
    out << "order inversions:\n";
    for (const auto& [a, b] : report.order_inversions)
      out << "  " << a << " <-> " << b << '\n';
  }

  if (!report.notes.empty()) {
    out << "\nnotes:\n";
    for (const auto& note : report.notes) out << "  - " << note << '\n';
  }
  return out.str();
}

}  // namespace callanat
