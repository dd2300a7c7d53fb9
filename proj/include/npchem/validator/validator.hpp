// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "npchem/smiles/kekulize.hpp"
#include "npchem/smiles/parser.hpp"
#include "npchem/util/csv.hpp"
#include "npchem/util/parallel.hpp"
#include "npchem/validator/error_category.hpp"

namespace npchem {

struct ValidationError {
  ErrorCategory category;
  std::size_t position;
  std::string detail;
};

struct ValidationOutcome {
  bool valid = true;
  std::optional<ValidationError> error;
};

/// Validate a complete (kFull) or prefix (kPartial) SMILES string. The
/// first failure in scanning order is reported; kekulization is only
/// attempted on complete strings that pass every syntax and valence check.
inline ValidationOutcome validate(std::string_view text,
                                  ParseMode mode = ParseMode::kFull) {
  ScanResult scan = scan_smiles(text, mode);
  const SmilesError* failure = scan.error ? &*scan.error : nullptr;
  std::optional<SmilesError> kekule_failure;
  if (!failure && mode == ParseMode::kFull) {
    try {
      kekulize(scan.parsed.graph);
    } catch (const SmilesError& e) {
      kekule_failure = e;
      failure = &*kekule_failure;
    }
  }
  if (!failure) return {};
  return {false,
          ValidationError{failure->category(), failure->position(),
                          failure->detail()}};
}

/// True for the six syntax categories that need context far from the
/// failing character to detect.
inline bool classify_long_range(ErrorCategory category) {
  return info(category).long_range;
}

struct ErrorProfile {
  std::size_t total = 0;
  std::size_t valid = 0;
  std::size_t rejected = 0;
  std::array<std::size_t, kErrorCategoryCount> counts{};

  void add(const ValidationOutcome& outcome) {
    ++total;
    if (outcome.valid) {
      ++valid;
      return;
    }
    ++rejected;
    ++counts[static_cast<std::size_t>(outcome.error->category)];
  }

  void merge(const ErrorProfile& other) {
    total += other.total;
    valid += other.valid;
    rejected += other.rejected;
    for (std::size_t i = 0; i < kErrorCategoryCount; ++i) {
      counts[i] += other.counts[i];
    }
  }

  std::size_t count(ErrorCategory category) const {
    return counts[static_cast<std::size_t>(category)];
  }

  /// Percentage of rejected strings in `category`; 0 when nothing failed.
  double pct(ErrorCategory category) const {
    if (rejected == 0) return 0.0;
    return 100.0 * static_cast<double>(count(category)) /
           static_cast<double>(rejected);
  }

  double long_range_pct() const {
    double sum = 0.0;
    for (const auto& c : kErrorCategories) {
      if (c.long_range) sum += pct(c.category);
    }
    return sum;
  }

  double kind_pct(ErrorKind kind) const {
    double sum = 0.0;
    for (const auto& c : kErrorCategories) {
      if (c.kind == kind) sum += pct(c.category);
    }
    return sum;
  }
};

/// Validate every line (in full mode) and tally the outcomes.
inline ErrorProfile error_profile(const std::vector<std::string>& corpus,
                                  unsigned jobs = 1) {
  const auto outcomes = parallel_map(
      corpus, [](const std::string& s) { return validate(s); }, jobs);
  ErrorProfile profile;
  for (const auto& o : outcomes) profile.add(o);
  return profile;
}

inline nlohmann::ordered_json to_json(const ErrorProfile& p) {
  nlohmann::ordered_json out;
  out["total"] = p.total;
  out["valid"] = p.valid;
  out["rejected"] = p.rejected;
  auto categories = nlohmann::ordered_json::array();
  if (p.rejected > 0) {
    for (const auto& c : kErrorCategories) {
      nlohmann::ordered_json row;
      row["kind"] = to_string(c.kind);
      row["message"] = c.message;
      row["count"] = p.count(c.category);
      row["pct"] = p.pct(c.category);
      row["long_range"] = c.long_range;
      categories.push_back(std::move(row));
    }
  }
  out["categories"] = std::move(categories);
  out["long_range_pct"] = p.long_range_pct();
  out["kind_pct"] = {{"syntax", p.kind_pct(ErrorKind::kSyntax)},
                     {"valence", p.kind_pct(ErrorKind::kValence)},
                     {"kekulization", p.kind_pct(ErrorKind::kKekulization)}};
  return out;
}

namespace detail {

inline std::string percent_text(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", value);
  return buf;
}

}  // namespace detail

/// One row per category ("Kind: message") and one column per profile,
/// values as percentages of rejected strings.
inline std::string error_table_csv(
    const std::vector<std::pair<std::string, ErrorProfile>>& columns) {
  std::string out = "Error Type";
  for (const auto& [label, profile] : columns) {
    out += ',';
    out += csv_field(label);
  }
  out += '\n';
  for (const auto& c : kErrorCategories) {
    out += csv_field(std::string(kind_label(c.kind)) + ": " +
                             std::string(c.message));
    for (const auto& column : columns) {
      out += ',';
      out += detail::percent_text(column.second.pct(c.category));
    }
    out += '\n';
  }
  return out;
}

}  // namespace npchem
