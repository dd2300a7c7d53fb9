// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "npchem/smiles/element.hpp"

namespace npchem {

enum class Chirality : std::uint8_t {
  kNone,
  kCounterClockwise,  // @
  kClockwise,         // @@
};

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

// Contribution of a bond to an atom's valence before kekulization; aromatic
// bonds count once and the missing double bond is accounted for separately.
inline int valence_contribution(BondOrder order) {
  return order == BondOrder::kAromatic ? 1 : static_cast<int>(order);
}

struct Atom {
  int element = 6;
  bool aromatic = false;
  int formal_charge = 0;
  // Present iff the atom was written in square brackets.
  std::optional<int> explicit_h_count;
  // Total attached hydrogens: explicit for bracket atoms, implicit otherwise.
  int hydrogens = 0;
  Chirality chirality = Chirality::kNone;
  bool in_ring = false;
  std::optional<int> isotope;
  // Offset of the atom token in the source text.
  std::size_t position = 0;

  bool bracket() const { return explicit_h_count.has_value(); }
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::kSingle;
  // Written (or implied) aromatic. Kept after kekulization so that the
  // Kekule assignment never leaks into canonical keys.
  bool aromatic = false;
  bool ring_bond = false;

  int other(int atom) const { return atom == a ? b : a; }
};

struct Neighbor {
  int atom;
  int bond;
};

/// Atoms and bonds parsed from a SMILES string. Immutable once built; the
/// per-atom neighbour lists follow bond creation order.
class MolecularGraph {
 public:
  MolecularGraph() = default;

  MolecularGraph(std::vector<Atom> atoms, std::vector<Bond> bonds,
                 std::string source, bool kekulized = false)
      : atoms_(std::move(atoms)),
        bonds_(std::move(bonds)),
        source_(std::move(source)),
        kekulized_(kekulized) {
    adjacency_.resize(atoms_.size());
    for (std::size_t i = 0; i < bonds_.size(); ++i) {
      const Bond& bond = bonds_[i];
      if (bond.a == bond.b || bond.a < 0 || bond.b < 0 ||
          bond.a >= static_cast<int>(atoms_.size()) ||
          bond.b >= static_cast<int>(atoms_.size())) {
        throw std::invalid_argument("bond endpoints must be distinct atoms");
      }
      adjacency_[static_cast<std::size_t>(bond.a)].push_back(
          {bond.b, static_cast<int>(i)});
      adjacency_[static_cast<std::size_t>(bond.b)].push_back(
          {bond.a, static_cast<int>(i)});
    }
    assign_ring_flags();
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  const Atom& atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  const Bond& bond(int i) const { return bonds_[static_cast<std::size_t>(i)]; }
  const std::vector<Neighbor>& neighbors(int i) const {
    return adjacency_[static_cast<std::size_t>(i)];
  }
  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  int degree(int i) const { return static_cast<int>(neighbors(i).size()); }
  const std::string& source() const { return source_; }
  bool kekulized() const { return kekulized_; }
  bool empty() const { return atoms_.empty(); }

  std::optional<int> bond_between(int a, int b) const {
    for (const Neighbor& n : neighbors(a)) {
      if (n.atom == b) return n.bond;
    }
    return std::nullopt;
  }

  // Heavy atoms are everything except hydrogen atoms.
  int heavy_atom_count() const {
    return static_cast<int>(std::count_if(
        atoms_.begin(), atoms_.end(),
        [](const Atom& a) { return a.element != 1; }));
  }

  /// Connected components as sorted atom-index lists, ordered by their
  /// smallest atom index.
  std::vector<std::vector<int>> components() const {
    std::vector<int> label(atoms_.size(), -1);
    std::vector<std::vector<int>> result;
    for (int start = 0; start < atom_count(); ++start) {
      if (label[static_cast<std::size_t>(start)] >= 0) continue;
      const int id = static_cast<int>(result.size());
      result.emplace_back();
      std::vector<int> stack{start};
      label[static_cast<std::size_t>(start)] = id;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        result.back().push_back(v);
        for (const Neighbor& n : neighbors(v)) {
          if (label[static_cast<std::size_t>(n.atom)] < 0) {
            label[static_cast<std::size_t>(n.atom)] = id;
            stack.push_back(n.atom);
          }
        }
      }
      std::sort(result.back().begin(), result.back().end());
    }
    return result;
  }

  /// Induced subgraph on `keep` (atom order preserved as given).
  MolecularGraph subgraph(const std::vector<int>& keep,
                          std::string source = {}) const {
    std::vector<int> remap(atoms_.size(), -1);
    std::vector<Atom> atoms;
    atoms.reserve(keep.size());
    for (int v : keep) {
      remap[static_cast<std::size_t>(v)] = static_cast<int>(atoms.size());
      atoms.push_back(atom(v));
    }
    std::vector<Bond> bonds;
    for (const Bond& b : bonds_) {
      const int a = remap[static_cast<std::size_t>(b.a)];
      const int c = remap[static_cast<std::size_t>(b.b)];
      if (a >= 0 && c >= 0) {
        Bond copy = b;
        copy.a = a;
        copy.b = c;
        bonds.push_back(copy);
      }
    }
    return MolecularGraph(std::move(atoms), std::move(bonds),
                          std::move(source), kekulized_);
  }

 private:
  // A bond is a ring bond iff it is not a bridge.
  void assign_ring_flags() {
    const std::size_t n = atoms_.size();
    std::vector<int> order(n, -1);
    std::vector<int> low(n, 0);
    int counter = 0;
    struct Frame {
      int atom;
      int parent_bond;
      std::size_t next;
    };
    for (auto& b : bonds_) b.ring_bond = true;
    for (std::size_t root = 0; root < n; ++root) {
      if (order[root] >= 0) continue;
      std::vector<Frame> stack{{static_cast<int>(root), -1, 0}};
      order[root] = low[root] = counter++;
      while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& adj = adjacency_[static_cast<std::size_t>(f.atom)];
        if (f.next < adj.size()) {
          const Neighbor nb = adj[f.next++];
          if (nb.bond == f.parent_bond) continue;
          const auto w = static_cast<std::size_t>(nb.atom);
          if (order[w] < 0) {
            order[w] = low[w] = counter++;
            stack.push_back({nb.atom, nb.bond, 0});
          } else {
            low[static_cast<std::size_t>(f.atom)] =
                std::min(low[static_cast<std::size_t>(f.atom)], order[w]);
          }
        } else {
          const Frame done = f;
          stack.pop_back();
          if (!stack.empty()) {
            const auto p = static_cast<std::size_t>(stack.back().atom);
            const auto c = static_cast<std::size_t>(done.atom);
            low[p] = std::min(low[p], low[c]);
            if (low[c] > order[p]) {
              bonds_[static_cast<std::size_t>(done.parent_bond)].ring_bond =
                  false;
            }
          }
        }
      }
    }
    for (auto& a : atoms_) a.in_ring = false;
    for (const auto& b : bonds_) {
      if (b.ring_bond) {
        atoms_[static_cast<std::size_t>(b.a)].in_ring = true;
        atoms_[static_cast<std::size_t>(b.b)].in_ring = true;
      }
    }
  }

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::string source_;
  bool kekulized_ = false;
  std::vector<std::vector<Neighbor>> adjacency_;
};

}  // namespace npchem
