// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Fake "generated" corpora: valid strings, rewrites of earlier molecules
// (duplicates by key but not by text), exact repeats and corrupted strings.

#include <random>
#include <string>
#include <vector>

#include "npchem/genmetrics/genmetrics.hpp"
#include "support/mutations.hpp"
#include "support/random_smiles.hpp"

namespace npchem::testing {

template <typename Rng>
std::vector<std::string> random_generated_corpus(Rng& rng, std::size_t size) {
  std::vector<GenMolecule> molecules;
  std::vector<std::string> out;
  std::uniform_int_distribution<int> choice(0, 9);
  while (out.size() < size) {
    const int c = choice(rng);
    if (c < 5 || molecules.empty()) {
      molecules.push_back(random_molecule(rng, 5));
      out.push_back(write_random(molecules.back(), rng));
    } else if (c < 7) {
      const auto& m = molecules[std::uniform_int_distribution<std::size_t>(
          0, molecules.size() - 1)(rng)];
      out.push_back(write_random(m, rng));
    } else if (c < 8) {
      out.push_back(out[std::uniform_int_distribution<std::size_t>(
          0, out.size() - 1)(rng)]);
    } else {
      const auto kind = static_cast<Mutation>(std::uniform_int_distribution<int>(0, 3)(rng));
      const std::string base = write_random(random_molecule(rng, 5), rng);
      out.push_back(mutate(kind, base).value_or(base + "("));
    }
  }
  return out;
}

/// Quadratic reference: linear scans over vectors instead of hash sets.
inline EvaluationReport naive_evaluate(const std::vector<std::string>& generated,
                                       const std::vector<std::string>& reference_keys) {
  EvaluationReport r;
  std::vector<std::string> unique_keys;
  for (const auto& s : generated) {
    ++r.total;
    std::string key;
    try {
      key = canonical_key(parse_smiles(s)).key;
    } catch (const SmilesError&) {
      continue;
    }
    ++r.valid;
    bool dup = false;
    for (const auto& k : unique_keys) dup = dup || k == key;
    if (dup) continue;
    unique_keys.push_back(key);
    ++r.unique;
    bool known = false;
    for (const auto& k : reference_keys) known = known || k == key;
    if (!known) ++r.novel;
  }
  return r;
}

}  // namespace npchem::testing
