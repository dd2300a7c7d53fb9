// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "npchem/smiles/aromaticity.hpp"
#include "npchem/smiles/graph.hpp"
#include "npchem/smiles/matching.hpp"
#include "npchem/validator/error_category.hpp"

namespace npchem {

/// Assign explicit single/double orders to every aromatic bond.
///
/// Aromatic bonds outside rings become plain single bonds. Inside rings,
/// the atoms that need a double bond (see needs_ring_double_bond) must be
/// perfectly matched over aromatic bonds; the matched bonds become double.
/// Bonds keep their `aromatic` flag. Throws SmilesError with the
/// kekulization category when no perfect matching exists.
inline MolecularGraph kekulize(const MolecularGraph& graph) {
  if (graph.kekulized()) return graph;

  std::vector<Bond> bonds = graph.bonds();
  bool any_aromatic = false;
  for (Bond& b : bonds) {
    if (b.order != BondOrder::kAromatic) continue;
    any_aromatic = true;
    if (!b.ring_bond) {
      b.order = BondOrder::kSingle;
      b.aromatic = false;
    }
  }
  if (!any_aromatic) {
    bool aromatic_atoms = false;
    for (const Atom& a : graph.atoms()) aromatic_atoms |= a.aromatic;
    if (!aromatic_atoms) {
      return MolecularGraph(graph.atoms(), std::move(bonds), graph.source(),
                            true);
    }
  }
  const MolecularGraph staged(graph.atoms(), bonds, graph.source());

  std::vector<int> local(static_cast<std::size_t>(staged.atom_count()), -1);
  std::vector<int> needing;
  for (int i = 0; i < staged.atom_count(); ++i) {
    if (needs_ring_double_bond(staged, i)) {
      local[static_cast<std::size_t>(i)] = static_cast<int>(needing.size());
      needing.push_back(i);
    }
  }

  BlossomMatching matching(static_cast<int>(needing.size()));
  for (const Bond& b : staged.bonds()) {
    if (b.order != BondOrder::kAromatic) continue;
    const int u = local[static_cast<std::size_t>(b.a)];
    const int v = local[static_cast<std::size_t>(b.b)];
    if (u >= 0 && v >= 0) matching.add_edge(u, v);
  }
  matching.solve();
  for (std::size_t k = 0; k < needing.size(); ++k) {
    if (matching.mate(static_cast<int>(k)) == -1) {
      const Atom& atom = staged.atom(needing[k]);
      throw SmilesError(ErrorCategory::kKekulization, atom.position,
                        std::string(info(ErrorCategory::kKekulization).message));
    }
  }

  for (Bond& b : bonds) {
    if (b.order != BondOrder::kAromatic) continue;
    const int u = local[static_cast<std::size_t>(b.a)];
    const int v = local[static_cast<std::size_t>(b.b)];
    const bool matched = u >= 0 && v >= 0 && matching.mate(u) == v;
    b.order = matched ? BondOrder::kDouble : BondOrder::kSingle;
  }
  return MolecularGraph(graph.atoms(), std::move(bonds), graph.source(), true);
}

}  // namespace npchem
