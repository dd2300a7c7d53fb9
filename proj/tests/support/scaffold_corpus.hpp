// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Molecules built as ring A + linker + ring B with random side chains, so
// that the scaffold of every molecule is known without running the pruner.

#include <random>
#include <string>
#include <vector>

namespace npchem::testing {

struct LinkedRing {
  const char* head;  // ring text up to the branch point, digit 1
  const char* tail;  // remainder after the branch
  const char* whole; // the ring alone, digit 2
};

inline const std::vector<LinkedRing>& ring_templates() {
  static const std::vector<LinkedRing> rings = {
      {"c1ccc(", ")cc1", "c2ccccc2"},     {"c1ccnc(", ")c1", "c2ccncc2"},
      {"C1CCC(", ")CC1", "C2CCCCC2"},     {"C1CC(", ")CC1", "C2CCCC2"},
      {"c1cc(", ")oc1", "c2ccoc2"},       {"c1cc(", ")sc1", "c2ccsc2"},
      {"c1cc(", ")[nH]c1", "c2cc[nH]c2"}, {"C1C(", ")C1", "C2CC2"},
      {"C1CCN(", ")CC1", "C2CCNCC2"},     {"C1COCC(", ")N1", "C2COCCN2"},
      {"c1ccc2ccccc2c1", "", "c2ccc3ccccc3c2"},
      {"C1CCCC(", ")CCC1", "C2CCCCCCC2"},
  };
  return rings;
}

struct ScaffoldRecipe {
  int ring_a;
  int ring_b;
  int linker;  // CH2 units between the rings
};

/// Scaffold in SMILES form (no side chains).
inline std::string scaffold_smiles(const ScaffoldRecipe& s) {
  const auto& r = ring_templates();
  const auto& a = r[static_cast<std::size_t>(s.ring_a)];
  return std::string(a.head) + std::string(static_cast<std::size_t>(s.linker), 'C') +
         r[static_cast<std::size_t>(s.ring_b)].whole + a.tail;
}

/// A molecule with the given scaffold and a random single-bonded side
/// chain on ring A's first atom.
template <typename Rng>
std::string decorate(const ScaffoldRecipe& s, Rng& rng) {
  static const char* kChains[] = {"", "C", "CC", "OC", "NCC", "CCC", "ClC",
                                  "CC(C)", "FC", "OCC"};
  const std::string chain =
      kChains[std::uniform_int_distribution<int>(0, 9)(rng)];
  return chain + scaffold_smiles(s);
}

inline std::vector<ScaffoldRecipe> all_scaffold_recipes() {
  std::vector<ScaffoldRecipe> out;
  const int n = static_cast<int>(ring_templates().size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int l = 0; l <= 3; ++l) out.push_back({a, b, l});
    }
  }
  return out;
}

}  // namespace npchem::testing
