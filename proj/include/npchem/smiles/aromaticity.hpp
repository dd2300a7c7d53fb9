// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "npchem/smiles/graph.hpp"

namespace npchem {

/// Whether an aromatic atom must receive exactly one double bond from its
/// aromatic ring bonds during kekulization.
///
/// Atoms that already carry a non-aromatic double bond never need one.
/// Lone-pair donors do not: neutral O/S/Se, pyrrole-type N/P (an explicit
/// hydrogen or a third substituent) and anionic N. Carbocations/anions and
/// neutral boron are treated as contributing an empty or filled p orbital.
inline bool needs_ring_double_bond(const MolecularGraph& graph, int index) {
  const Atom& atom = graph.atom(index);
  if (!atom.aromatic) return false;
  for (const Neighbor& n : graph.neighbors(index)) {
    const Bond& bond = graph.bond(n.bond);
    if (!bond.aromatic && bond.order == BondOrder::kDouble) return false;
  }
  const int connections = graph.degree(index) + atom.hydrogens;
  const int h = atom.explicit_h_count.value_or(0);
  switch (atom.element) {
    case 6:
      return atom.formal_charge == 0;
    case 7:
    case 15:
    case 33:
      if (atom.formal_charge == 0) return h == 0 && graph.degree(index) < 3;
      if (atom.formal_charge == 1) return connections <= 3;
      return false;
    case 8:
    case 16:
    case 34:
    case 52:
      return atom.formal_charge == 1 && graph.degree(index) <= 2;
    case 5:
      return atom.formal_charge == -1;
    default:
      return false;
  }
}

}  // namespace npchem
