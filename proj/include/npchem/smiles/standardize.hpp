// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "npchem/smiles/canonical.hpp"
#include "npchem/smiles/graph.hpp"
#include "npchem/smiles/kekulize.hpp"
#include "npchem/smiles/parser.hpp"
#include "npchem/util/parallel.hpp"

namespace npchem {

/// The connected component with the most heavy atoms. Ties go to the
/// lexicographically smallest canonical key; components that cannot be
/// kekulized lose ties against those that can.
inline MolecularGraph largest_fragment(const MolecularGraph& g) {
  auto parts = g.components();
  if (parts.size() <= 1) return g;
  std::optional<MolecularGraph> best;
  int best_heavy = -1;
  std::optional<std::string> best_key;
  for (const auto& part : parts) {
    MolecularGraph fragment = g.subgraph(part);
    const int heavy = fragment.heavy_atom_count();
    if (heavy < best_heavy) continue;
    std::optional<std::string> key;
    try {
      key = canonical_key(fragment).key;
    } catch (const SmilesError&) {
    }
    bool better = heavy > best_heavy;
    if (!better) {
      better = key && (!best_key || *key < *best_key);
    }
    if (better) {
      best_heavy = heavy;
      best_key = key;
      best = std::move(fragment);
    }
  }
  const std::string source = best_key ? *best_key : write_smiles(*best);
  return MolecularGraph(best->atoms(), best->bonds(), source,
                        best->kekulized());
}

struct StandardizeReport {
  std::size_t input_count = 0;
  std::size_t kept = 0;
  std::size_t dropped_parse = 0;
  std::size_t dropped_kekulize = 0;
  std::size_t dropped_duplicate = 0;
};

struct StandardizeResult {
  std::vector<std::string> kept;  // canonical SMILES, first-seen order
  StandardizeReport report;
};

enum class StandardizeOutcome { kKept, kParse, kKekulize };

struct StandardizedLine {
  StandardizeOutcome outcome;
  std::string key;
};

/// parse -> largest fragment -> kekulize -> canonical key for one line.
inline StandardizedLine standardize_smiles(std::string_view line) {
  MolecularGraph graph;
  try {
    graph = parse_smiles(line);
  } catch (const SmilesError&) {
    return {StandardizeOutcome::kParse, {}};
  }
  try {
    const MolecularGraph kekule = kekulize(largest_fragment(graph));
    return {StandardizeOutcome::kKept, canonical_key(kekule).key};
  } catch (const SmilesError&) {
    return {StandardizeOutcome::kKekulize, {}};
  }
}

/// Skip blank lines and '#' comments in corpus files.
inline bool is_corpus_record(std::string_view line) {
  return !line.empty() && line.front() != '#';
}

/// Standardize and deduplicate a corpus. Per-line work fans out over
/// `jobs` threads; deduplication runs afterwards in input order, so the
/// kept stream is identical for every job count.
inline StandardizeResult standardize_corpus(
    const std::vector<std::string>& lines, unsigned jobs = 1) {
  std::vector<std::string_view> records;
  for (const auto& line : lines) {
    if (is_corpus_record(line)) records.push_back(line);
  }
  const auto processed = parallel_map(
      records, [](std::string_view s) { return standardize_smiles(s); }, jobs);
  StandardizeResult result;
  result.report.input_count = records.size();
  std::unordered_set<std::string> seen;
  for (const auto& line : processed) {
    switch (line.outcome) {
      case StandardizeOutcome::kParse:
        ++result.report.dropped_parse;
        break;
      case StandardizeOutcome::kKekulize:
        ++result.report.dropped_kekulize;
        break;
      case StandardizeOutcome::kKept:
        if (seen.insert(line.key).second) {
          result.kept.push_back(line.key);
        } else {
          ++result.report.dropped_duplicate;
        }
        break;
    }
  }
  result.report.kept = result.kept.size();
  return result;
}

}  // namespace npchem
