// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Validity, uniqueness and novelty of generated SMILES. Every molecule
// level percentage is taken over the total number of generated strings.

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "npchem/scaffold/scaffold.hpp"
#include "npchem/smiles/canonical.hpp"
#include "npchem/smiles/kekulize.hpp"
#include "npchem/smiles/parser.hpp"
#include "npchem/smiles/standardize.hpp"
#include "npchem/util/csv.hpp"
#include "npchem/util/parallel.hpp"
#include "npchem/validator/validator.hpp"

namespace npchem {

/// Novel scaffolds seen fewer than this many times count as rare.
inline constexpr std::size_t kRareScaffoldThreshold = 10;

struct ReferenceIndex {
  std::unordered_set<std::string> keys;
  std::unordered_set<std::string> scaffolds;  // non-empty scaffold keys
};

struct EvaluationReport {
  std::size_t total = 0;
  std::size_t valid = 0;
  std::size_t unique = 0;
  std::size_t novel = 0;
  std::size_t unique_scaffolds = 0;
  std::size_t novel_scaffolds = 0;
  std::size_t rare_novel_scaffolds = 0;  // novel, < kRareScaffoldThreshold uses
  double mean_char_length = 0.0;
  ErrorProfile error_profile;

  double fraction(std::size_t n) const {
    return total ? static_cast<double>(n) / static_cast<double>(total) : 0.0;
  }
  double valid_pct() const { return fraction(valid); }
  double unique_pct() const { return fraction(unique); }
  double novel_pct() const { return fraction(novel); }
};

namespace detail {

struct GeneratedLine {
  ValidationOutcome outcome;
  std::string key;
  std::string scaffold;
};

inline GeneratedLine evaluate_line(std::string_view text) {
  GeneratedLine line;
  ScanResult scan = scan_smiles(text, ParseMode::kFull);
  if (scan.error) {
    line.outcome = {false, ValidationError{scan.error->category(),
                                           scan.error->position(),
                                           scan.error->detail()}};
    return line;
  }
  try {
    const MolecularGraph kekule = kekulize(scan.parsed.graph);
    line.key = canonical_key(kekule).key;
    line.scaffold = murcko_scaffold(kekule).key;
  } catch (const SmilesError& e) {
    line.outcome = {false, ValidationError{e.category(), e.position(), e.detail()}};
  }
  return line;
}

}  // namespace detail

/// Reference keys and scaffolds of a training corpus, standardized the
/// same way as the corpus pipeline. Unusable lines are skipped.
inline ReferenceIndex build_reference_index(const std::vector<std::string>& lines,
                                            unsigned jobs = 1) {
  std::vector<std::string_view> records;
  for (const auto& l : lines) {
    if (is_corpus_record(l)) records.push_back(l);
  }
  const auto keyed = parallel_map(
      records,
      [](std::string_view s) -> std::pair<std::string, std::string> {
        const StandardizedLine st = standardize_smiles(s);
        if (st.outcome != StandardizeOutcome::kKept) return {};
        return {st.key, murcko_scaffold(st.key).key};
      },
      jobs);
  ReferenceIndex index;
  for (const auto& [key, scaffold] : keyed) {
    if (key.empty()) continue;
    index.keys.insert(key);
    if (!scaffold.empty()) index.scaffolds.insert(scaffold);
  }
  return index;
}

/// Evaluate generated strings (blank and '#' lines are not records).
inline EvaluationReport evaluate_corpus(const std::vector<std::string>& generated,
                                        const ReferenceIndex& reference,
                                        unsigned jobs = 1) {
  std::vector<std::string_view> records;
  for (const auto& l : generated) {
    if (is_corpus_record(l)) records.push_back(l);
  }
  const auto lines = parallel_map(
      records, [](std::string_view s) { return detail::evaluate_line(s); }, jobs);

  EvaluationReport report;
  std::unordered_set<std::string> seen;
  std::map<std::string, std::size_t> scaffold_uses;
  double chars = 0.0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    ++report.total;
    chars += static_cast<double>(records[i].size());
    report.error_profile.add(line.outcome);
    if (!line.outcome.valid) continue;
    ++report.valid;
    if (!seen.insert(line.key).second) continue;
    ++report.unique;
    if (!reference.keys.count(line.key)) ++report.novel;
    if (!line.scaffold.empty()) ++scaffold_uses[line.scaffold];
  }
  report.unique_scaffolds = scaffold_uses.size();
  for (const auto& [scaffold, uses] : scaffold_uses) {
    if (reference.scaffolds.count(scaffold)) continue;
    ++report.novel_scaffolds;
    if (uses < kRareScaffoldThreshold) ++report.rare_novel_scaffolds;
  }
  if (report.total) report.mean_char_length = chars / static_cast<double>(report.total);
  return report;
}

inline nlohmann::ordered_json to_json(const EvaluationReport& r) {
  nlohmann::ordered_json out;
  out["total"] = r.total;
  out["valid"] = r.valid;
  out["unique"] = r.unique;
  out["novel"] = r.novel;
  out["valid_pct"] = 100.0 * r.valid_pct();
  out["unique_pct"] = 100.0 * r.unique_pct();
  out["novel_pct"] = 100.0 * r.novel_pct();
  out["unique_scaffolds"] = r.unique_scaffolds;
  out["novel_scaffolds"] = r.novel_scaffolds;
  out["rare_novel_scaffolds"] = r.rare_novel_scaffolds;
  out["rare_threshold"] = kRareScaffoldThreshold;
  out["mean_char_length"] = r.mean_char_length;
  out["error_profile"] = to_json(r.error_profile);
  return out;
}

using LabeledReport = std::pair<std::string, EvaluationReport>;

/// One row per label: molecule percentages then scaffold counts.
inline std::string report_table_csv(const std::vector<LabeledReport>& reports) {
  std::string out =
      "label,valid_pct,unique_pct,novel_pct,unique_scaffolds,novel_scaffolds\n";
  for (const auto& [label, r] : reports) {
    out += csv_field(label) + "," + fixed_text(100.0 * r.valid_pct(), 2) + "," +
           fixed_text(100.0 * r.unique_pct(), 2) + "," +
           fixed_text(100.0 * r.novel_pct(), 2) + "," +
           std::to_string(r.unique_scaffolds) + "," +
           std::to_string(r.novel_scaffolds) + "\n";
  }
  return out;
}

inline nlohmann::ordered_json report_table_json(
    const std::vector<LabeledReport>& reports) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& [label, r] : reports) {
    nlohmann::ordered_json row;
    row["label"] = label;
    row["valid_pct"] = 100.0 * r.valid_pct();
    row["unique_pct"] = 100.0 * r.unique_pct();
    row["novel_pct"] = 100.0 * r.novel_pct();
    row["unique_scaffolds"] = r.unique_scaffolds;
    row["novel_scaffolds"] = r.novel_scaffolds;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace npchem
