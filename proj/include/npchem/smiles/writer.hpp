// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <span>
#include <string>
#include <vector>

#include "npchem/smiles/aromaticity.hpp"
#include "npchem/smiles/element.hpp"
#include "npchem/smiles/graph.hpp"
#include "npchem/validator/valence.hpp"

namespace npchem {

namespace detail {

inline int written_valence(const MolecularGraph& g, int index) {
  int sum = 0;
  for (const Neighbor& n : g.neighbors(index)) {
    const Bond& b = g.bond(n.bond);
    sum += b.aromatic ? 1 : valence_contribution(b.order);
  }
  return sum + (needs_ring_double_bond(g, index) ? 1 : 0);
}

}  // namespace detail

/// True when the atom re-parses identically without square brackets.
inline bool writable_unbracketed(const MolecularGraph& g, int index) {
  const Atom& atom = g.atom(index);
  if (atom.formal_charge != 0 || atom.isotope ||
      atom.chirality != Chirality::kNone) {
    return false;
  }
  if (atom.aromatic ? !is_aromatic_organic(atom.element)
                    : !is_organic_subset(atom.element)) {
    return false;
  }
  // Pyrrole-type nitrogen keeps its bracket: unbracketed it would be
  // treated as pyridine-type.
  if (atom.aromatic && (atom.element == 7 || atom.element == 15) &&
      atom.hydrogens != 0) {
    return false;
  }
  const auto implicit = default_valence_table().implicit_hydrogens(
      atom.element, detail::written_valence(g, index));
  return implicit && *implicit == atom.hydrogens;
}

inline std::string chirality_text(Chirality chirality) {
  switch (chirality) {
    case Chirality::kCounterClockwise: return "@";
    case Chirality::kClockwise: return "@@";
    case Chirality::kNone: return "";
  }
  return "";
}

inline std::string charge_text(int charge) {
  if (charge == 0) return "";
  std::string out(1, charge > 0 ? '+' : '-');
  const int magnitude = charge > 0 ? charge : -charge;
  if (magnitude > 1) out += std::to_string(magnitude);
  return out;
}

inline std::string symbol_text(const Atom& atom) {
  std::string symbol(element_symbol(atom.element));
  if (atom.aromatic) {
    for (char& c : symbol) c = static_cast<char>(std::tolower(c));
  }
  return symbol;
}

/// Bracket form of an atom, e.g. "[C@@H]", "[nH]", "[NH3+]".
inline std::string bracket_atom_text(const Atom& atom) {
  std::string out = "[";
  if (atom.isotope) out += std::to_string(*atom.isotope);
  out += symbol_text(atom);
  out += chirality_text(atom.chirality);
  if (atom.hydrogens > 0) {
    out += 'H';
    if (atom.hydrogens > 1) out += std::to_string(atom.hydrogens);
  }
  out += charge_text(atom.formal_charge);
  out += ']';
  return out;
}

inline std::string atom_text(const MolecularGraph& g, int index) {
  return writable_unbracketed(g, index) ? symbol_text(g.atom(index))
                                        : bracket_atom_text(g.atom(index));
}

inline std::string bond_text(const MolecularGraph& g, const Bond& bond) {
  const bool both_aromatic = g.atom(bond.a).aromatic && g.atom(bond.b).aromatic;
  if (bond.aromatic) return both_aromatic ? "" : ":";
  switch (bond.order) {
    case BondOrder::kSingle: return both_aromatic ? "-" : "";
    case BondOrder::kDouble: return "=";
    case BondOrder::kTriple: return "#";
    case BondOrder::kAromatic: return both_aromatic ? "" : ":";
  }
  return "";
}

namespace detail {

class SmilesWriter {
 public:
  SmilesWriter(const MolecularGraph& g, std::span<const int> rank)
      : g_(g), rank_(rank) {
    const auto n = static_cast<std::size_t>(g.atom_count());
    visited_.assign(n, false);
    children_.resize(n);
    openings_.resize(n);
    closings_.resize(n);
    parent_bond_.assign(n, -1);
    sorted_.resize(n);
    for (int v = 0; v < g.atom_count(); ++v) {
      auto& list = sorted_[static_cast<std::size_t>(v)];
      list = g.neighbors(v);
      std::sort(list.begin(), list.end(),
                [&](const Neighbor& x, const Neighbor& y) {
                  return rank_[static_cast<std::size_t>(x.atom)] <
                         rank_[static_cast<std::size_t>(y.atom)];
                });
    }
  }

  // Atoms in the order they were written by the last write().
  const std::vector<int>& emitted() const { return emitted_; }

  std::string write() {
    std::vector<int> roots(static_cast<std::size_t>(g_.atom_count()));
    std::iota(roots.begin(), roots.end(), 0);
    std::sort(roots.begin(), roots.end(), [&](int x, int y) {
      return rank_[static_cast<std::size_t>(x)] <
             rank_[static_cast<std::size_t>(y)];
    });
    std::string out;
    for (int root : roots) {
      if (visited_[static_cast<std::size_t>(root)]) continue;
      explore(root);
      if (!out.empty()) out += '.';
      emit(root, out);
    }
    return out;
  }

 private:
  struct RingEdge {
    int bond;
    int partner;
  };

  void explore(int root) {
    struct Frame {
      int atom;
      std::size_t next;
    };
    std::vector<Frame> stack{{root, 0}};
    std::vector<bool> on_stack(visited_.size(), false);
    visited_[static_cast<std::size_t>(root)] = true;
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& list = sorted_[static_cast<std::size_t>(f.atom)];
      if (f.next == list.size()) {
        on_stack[static_cast<std::size_t>(f.atom)] = false;
        stack.pop_back();
        continue;
      }
      const Neighbor nb = list[f.next++];
      if (nb.bond == parent_bond_[static_cast<std::size_t>(f.atom)]) continue;
      const auto w = static_cast<std::size_t>(nb.atom);
      if (visited_[w]) {
        // Back edge to an ancestor still on the stack: ring closure.
        if (on_stack[w]) {
          openings_[w].push_back({nb.bond, f.atom});
          closings_[static_cast<std::size_t>(f.atom)].push_back(
              {nb.bond, nb.atom});
        }
        continue;
      }
      visited_[w] = true;
      on_stack[w] = true;
      parent_bond_[w] = nb.bond;
      children_[static_cast<std::size_t>(f.atom)].push_back(nb);
      stack.push_back({nb.atom, 0});
    }
  }

  std::string ring_label(int digit) {
    if (digit < 10) return std::string(1, static_cast<char>('0' + digit));
    return "%" + std::to_string(digit);
  }

  int allocate_digit() {
    for (int d = 1; d < 100; ++d) {
      if (!in_use_.contains(d)) {
        in_use_.insert(d);
        return d;
      }
    }
    throw std::runtime_error("too many open rings to write SMILES");
  }

  void emit(int root, std::string& out) {
    struct Frame {
      int atom;
      std::size_t next;
      bool opened_paren;
    };
    emit_atom(root, out);
    std::vector<Frame> stack{{root, 0, false}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& kids = children_[static_cast<std::size_t>(f.atom)];
      if (f.next == kids.size()) {
        if (f.opened_paren) out += ')';
        stack.pop_back();
        continue;
      }
      const std::size_t k = f.next++;
      const Neighbor child = kids[k];
      const bool branch = k + 1 < kids.size();
      if (branch) out += '(';
      out += bond_text(g_, g_.bond(child.bond));
      emit_atom(child.atom, out);
      stack.push_back({child.atom, 0, branch});
    }
  }

  void emit_atom(int v, std::string& out) {
    emitted_.push_back(v);
    out += atom_text(g_, v);
    const auto i = static_cast<std::size_t>(v);
    std::vector<int> released;
    // Closings in the order their digits were opened.
    auto closes = closings_[i];
    std::sort(closes.begin(), closes.end(),
              [&](const RingEdge& x, const RingEdge& y) {
                return digit_of_[x.bond] < digit_of_[y.bond];
              });
    for (const RingEdge& e : closes) {
      const int digit = digit_of_[e.bond];
      out += ring_label(digit);
      released.push_back(digit);
    }
    auto opens = openings_[i];
    std::sort(opens.begin(), opens.end(),
              [&](const RingEdge& x, const RingEdge& y) {
                return rank_[static_cast<std::size_t>(x.partner)] <
                       rank_[static_cast<std::size_t>(y.partner)];
              });
    for (const RingEdge& e : opens) {
      const int digit = allocate_digit();
      digit_of_[e.bond] = digit;
      out += bond_text(g_, g_.bond(e.bond));
      out += ring_label(digit);
    }
    for (int d : released) in_use_.erase(d);
  }

  const MolecularGraph& g_;
  std::span<const int> rank_;
  std::vector<bool> visited_;
  std::vector<std::vector<Neighbor>> sorted_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<RingEdge>> openings_;
  std::vector<std::vector<RingEdge>> closings_;
  std::vector<int> parent_bond_;
  std::map<int, int> digit_of_;
  std::set<int> in_use_;
  std::vector<int> emitted_;
};

}  // namespace detail

/// Serialize `g` depth-first. Each component starts at its lowest-ranked
/// atom and neighbours are visited in ascending rank.
inline std::string write_smiles(const MolecularGraph& g,
                                std::span<const int> rank,
                                std::vector<int>* emitted = nullptr) {
  if (static_cast<int>(rank.size()) != g.atom_count()) {
    throw std::invalid_argument("rank size must equal the atom count");
  }
  detail::SmilesWriter writer(g, rank);
  std::string out = writer.write();
  if (emitted) *emitted = writer.emitted();
  return out;
}

/// Serialize in input atom order.
inline std::string write_smiles(const MolecularGraph& g) {
  std::vector<int> rank(static_cast<std::size_t>(g.atom_count()));
  std::iota(rank.begin(), rank.end(), 0);
  return write_smiles(g, rank);
}

}  // namespace npchem
