// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// SMILES scanner. One left-to-right pass builds the molecular graph and
// stops at the first categorized failure; the same scanner backs both
// parse_smiles() and the (partial) validator so the two can never disagree.

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "npchem/smiles/aromaticity.hpp"
#include "npchem/smiles/element.hpp"
#include "npchem/smiles/graph.hpp"
#include "npchem/validator/error_category.hpp"
#include "npchem/validator/valence.hpp"

namespace npchem {

enum class ParseMode {
  kFull,     // the string must be a complete SMILES
  kPartial,  // the string may be a prefix of a valid SMILES
};

enum class SmilesTokenKind { kAtom, kBond, kRing, kOpenBranch, kCloseBranch, kDot };

struct SmilesToken {
  SmilesTokenKind kind;
  std::string text;
  std::size_t position;
  int atom = -1;  // atom index for kAtom tokens
};

struct ParsedSmiles {
  MolecularGraph graph;
  std::vector<SmilesToken> tokens;
  // Per atom: neighbours in the order they are written (parent, ring-bond
  // digits, then branches and the chain continuation).
  std::vector<std::vector<int>> written_neighbors;
};

struct ScanResult {
  ParsedSmiles parsed;
  std::optional<SmilesError> error;
};

namespace detail {

class SmilesScanner {
 public:
  SmilesScanner(std::string_view text, ParseMode mode,
                const ValenceTable& valences)
      : text_(text), mode_(mode), valences_(valences) {}

  ScanResult run() {
    ScanResult result;
    try {
      scan();
      finish();
      result.parsed = build();
      if (mode_ == ParseMode::kFull) final_valence_check(result.parsed.graph);
    } catch (const SmilesError& e) {
      result.error = e;
      result.parsed.tokens = std::move(tokens_);
    }
    return result;
  }

 private:
  enum class Prev { kStart, kAtom, kBond, kRing, kOpen, kClose, kDot };

  struct PendingBond {
    BondOrder order;
    std::size_t position;
  };

  struct RingOpening {
    int atom;
    std::optional<BondOrder> order;
    std::size_t slot;  // index into written_[atom] awaiting the partner
  };

  struct BondDraft {
    int a;
    int b;
    BondOrder order;
    bool aromatic;
  };

  [[noreturn]] void fail(ErrorCategory category, std::size_t position,
                         int count = 0) {
    throw SmilesError(category, position, render_message(category, count));
  }

  bool partial() const { return mode_ == ParseMode::kPartial; }
  bool at_end(std::size_t i) const { return i >= text_.size(); }

  void scan() {
    std::size_t i = 0;
    while (i < text_.size()) {
      const char c = text_[i];
      if (c == '[') {
        i = bracket_atom(i);
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        i = organic_atom(i);
      } else if (c == '(') {
        open_branch(i);
        ++i;
      } else if (c == ')') {
        close_branch(i);
        ++i;
      } else if (c == '.') {
        dot(i);
        ++i;
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' ||
                 c == '\\') {
        bond_symbol(i);
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        ring_bond(i, c - '0', 1);
        ++i;
      } else if (c == '%') {
        std::size_t digits = 0;
        while (digits < 2 && i + 1 + digits < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[i + 1 + digits]))) {
          ++digits;
        }
        if (digits < 2) {
          if (partial() && i + 1 + digits == text_.size()) {
            check_ring_position(i);
            return;
          }
          fail(ErrorCategory::kIllegalCharacter, i);
        }
        ring_bond(i, (text_[i + 1] - '0') * 10 + (text_[i + 2] - '0'), 3);
        i += 3;
      } else {
        fail(ErrorCategory::kIllegalCharacter, i);
      }
    }
  }

  // --- atoms ---------------------------------------------------------------

  std::size_t organic_atom(std::size_t i) {
    const char c = text_[i];
    int z = 0;
    bool aromatic = false;
    std::size_t len = 1;
    switch (c) {
      case 'B':
        if (i + 1 < text_.size() && text_[i + 1] == 'r') {
          z = 35;
          len = 2;
        } else {
          z = 5;
        }
        break;
      case 'C':
        if (i + 1 < text_.size() && text_[i + 1] == 'l') {
          z = 17;
          len = 2;
        } else {
          z = 6;
        }
        break;
      case 'N': z = 7; break;
      case 'O': z = 8; break;
      case 'P': z = 15; break;
      case 'S': z = 16; break;
      case 'F': z = 9; break;
      case 'I': z = 53; break;
      case 'b': z = 5; aromatic = true; break;
      case 'c': z = 6; aromatic = true; break;
      case 'n': z = 7; aromatic = true; break;
      case 'o': z = 8; aromatic = true; break;
      case 'p': z = 15; aromatic = true; break;
      case 's': z = 16; aromatic = true; break;
      default:
        fail(ErrorCategory::kIllegalCharacter, i);
    }
    Atom atom;
    atom.element = z;
    atom.aromatic = aromatic;
    atom.position = i;
    add_atom(atom, i, text_.substr(i, len));
    return i + len;
  }

  std::size_t bracket_atom(std::size_t start) {
    std::size_t i = start + 1;
    auto incomplete = [&]() -> std::size_t {
      if (partial()) return text_.size();
      in_bracket_at_end_ = true;
      bracket_start_ = start;
      return text_.size();
    };
    Atom atom;
    atom.position = start;
    int isotope = 0;
    bool has_isotope = false;
    while (!at_end(i) && std::isdigit(static_cast<unsigned char>(text_[i]))) {
      isotope = isotope * 10 + (text_[i] - '0');
      has_isotope = true;
      ++i;
    }
    if (has_isotope) atom.isotope = isotope;
    if (at_end(i)) return incomplete();

    // Element symbol.
    const char c0 = text_[i];
    if (!std::isalpha(static_cast<unsigned char>(c0))) {
      fail(ErrorCategory::kElementRequired, i);
    }
    std::optional<int> z;
    std::size_t len = 0;
    if (std::isupper(static_cast<unsigned char>(c0))) {
      if (!at_end(i + 1) &&
          std::islower(static_cast<unsigned char>(text_[i + 1]))) {
        z = atomic_number(text_.substr(i, 2));
        if (z) len = 2;
      }
      if (!z) {
        z = atomic_number(text_.substr(i, 1));
        if (z) len = 1;
      }
    } else {
      std::string upper;
      if (!at_end(i + 1) &&
          std::islower(static_cast<unsigned char>(text_[i + 1]))) {
        upper = {static_cast<char>(std::toupper(c0)), text_[i + 1]};
        z = atomic_number(upper);
        if (z && !is_aromatic_eligible(*z)) z.reset();
        if (z) len = 2;
      }
      if (!z) {
        upper = {static_cast<char>(std::toupper(c0))};
        z = atomic_number(upper);
        if (z && !is_aromatic_eligible(*z)) z.reset();
        if (z) len = 1;
      }
      atom.aromatic = z.has_value();
    }
    if (!z) fail(ErrorCategory::kElementRequired, i);
    atom.element = *z;
    i += len;

    // Chirality.
    if (!at_end(i) && text_[i] == '@') {
      if (!at_end(i + 1) && text_[i + 1] == '@') {
        atom.chirality = Chirality::kClockwise;
        i += 2;
      } else {
        atom.chirality = Chirality::kCounterClockwise;
        i += 1;
      }
    }
    // Hydrogen count.
    int h = 0;
    if (!at_end(i) && text_[i] == 'H') {
      h = 1;
      ++i;
      if (!at_end(i) && std::isdigit(static_cast<unsigned char>(text_[i]))) {
        h = text_[i] - '0';
        ++i;
      }
    }
    atom.explicit_h_count = h;
    atom.hydrogens = h;
    // Charge.
    if (!at_end(i) && (text_[i] == '+' || text_[i] == '-')) {
      const char sign = text_[i];
      const int unit = sign == '+' ? 1 : -1;
      ++i;
      if (!at_end(i) && text_[i] == sign) {
        atom.formal_charge = 2 * unit;
        ++i;
      } else if (!at_end(i) &&
                 std::isdigit(static_cast<unsigned char>(text_[i]))) {
        int magnitude = 0;
        while (!at_end(i) &&
               std::isdigit(static_cast<unsigned char>(text_[i]))) {
          magnitude = magnitude * 10 + (text_[i] - '0');
          ++i;
        }
        atom.formal_charge = unit * magnitude;
      } else {
        atom.formal_charge = unit;
      }
    }
    // Atom class (ignored).
    if (!at_end(i) && text_[i] == ':') {
      ++i;
      while (!at_end(i) && std::isdigit(static_cast<unsigned char>(text_[i]))) {
        ++i;
      }
    }
    if (at_end(i)) return incomplete();
    if (text_[i] != ']') fail(ErrorCategory::kMissingCloseBracket, i);
    add_atom(atom, start, text_.substr(start, i + 1 - start));
    return i + 1;
  }

  void add_atom(Atom atom, std::size_t position, std::string_view text) {
    const int index = static_cast<int>(atoms_.size());
    atoms_.push_back(atom);
    sums_.push_back(0);
    neighbors_.emplace_back();
    written_.emplace_back();
    tokens_.push_back({SmilesTokenKind::kAtom, std::string(text), position,
                       index});
    if (prev_ != Prev::kStart && prev_ != Prev::kDot) {
      std::optional<BondOrder> order;
      if (pending_) order = pending_->order;
      written_[static_cast<std::size_t>(index)].push_back(current_);
      written_[static_cast<std::size_t>(current_)].push_back(index);
      add_bond(current_, index, order, position);
    }
    pending_.reset();
    current_ = index;
    prev_ = Prev::kAtom;
  }

  void add_bond(int a, int b, std::optional<BondOrder> order,
                std::size_t position) {
    const bool both_aromatic = atoms_[static_cast<std::size_t>(a)].aromatic &&
                               atoms_[static_cast<std::size_t>(b)].aromatic;
    BondDraft draft{a, b, BondOrder::kSingle, false};
    if (!order) {
      if (both_aromatic) {
        draft.order = BondOrder::kAromatic;
        draft.aromatic = true;
      }
    } else {
      draft.order = *order;
      draft.aromatic = *order == BondOrder::kAromatic;
    }
    bonds_.push_back(draft);
    neighbors_[static_cast<std::size_t>(a)].push_back(b);
    neighbors_[static_cast<std::size_t>(b)].push_back(a);
    const int contribution = valence_contribution(draft.order);
    sums_[static_cast<std::size_t>(a)] += contribution;
    sums_[static_cast<std::size_t>(b)] += contribution;
    check_overflow(a, position);
    check_overflow(b, position);
  }

  // Valence can only grow while scanning, so exceeding the largest allowed
  // value is a local (prefix-stable) failure.
  void check_overflow(int index, std::size_t position) {
    const Atom& atom = atoms_[static_cast<std::size_t>(index)];
    const int charge = atom.bracket() ? atom.formal_charge : 0;
    const auto max = valences_.max_valence(atom.element, charge);
    if (!max) return;
    const int total = sums_[static_cast<std::size_t>(index)] +
                      atom.explicit_h_count.value_or(0);
    if (total > *max) fail(ErrorCategory::kValence, position);
  }

  // --- structure -------------------------------------------------------------

  void open_branch(std::size_t i) {
    switch (prev_) {
      case Prev::kBond:
        fail(ErrorCategory::kBondBeforeOpenParen, i);
      case Prev::kStart:
      case Prev::kDot:
      case Prev::kOpen:
        fail(ErrorCategory::kAtomBeforeOpenParen, i);
      default:
        break;
    }
    branches_.push_back(current_);
    tokens_.push_back({SmilesTokenKind::kOpenBranch, "(", i});
    prev_ = Prev::kOpen;
  }

  void close_branch(std::size_t i) {
    if (branches_.empty()) fail(ErrorCategory::kUnmatchedCloseParen, i);
    switch (prev_) {
      case Prev::kOpen:
        fail(ErrorCategory::kEmptyBranch, i);
      case Prev::kBond:
      case Prev::kDot:
        fail(ErrorCategory::kAtomAfterBond, i);
      default:
        break;
    }
    current_ = branches_.back();
    branches_.pop_back();
    tokens_.push_back({SmilesTokenKind::kCloseBranch, ")", i});
    prev_ = Prev::kClose;
  }

  void dot(std::size_t i) {
    switch (prev_) {
      case Prev::kBond:
        fail(ErrorCategory::kAtomAfterBond, i);
      case Prev::kStart:
      case Prev::kDot:
      case Prev::kOpen:
        fail(ErrorCategory::kAtomBeforeBond, i);
      default:
        break;
    }
    tokens_.push_back({SmilesTokenKind::kDot, ".", i});
    current_ = -1;
    prev_ = Prev::kDot;
  }

  void bond_symbol(std::size_t i) {
    switch (prev_) {
      case Prev::kStart:
      case Prev::kDot:
        fail(ErrorCategory::kAtomBeforeBond, i);
      case Prev::kBond:
        fail(ErrorCategory::kSingleBondSymbol, i);
      default:
        break;
    }
    BondOrder order = BondOrder::kSingle;
    switch (text_[i]) {
      case '=': order = BondOrder::kDouble; break;
      case '#': order = BondOrder::kTriple; break;
      case ':': order = BondOrder::kAromatic; break;
      default: break;
    }
    pending_ = PendingBond{order, i};
    before_bond_ = prev_;
    tokens_.push_back({SmilesTokenKind::kBond, std::string(1, text_[i]), i});
    prev_ = Prev::kBond;
  }

  void check_ring_position(std::size_t i) {
    Prev effective = prev_;
    if (prev_ == Prev::kBond) effective = before_bond_;
    switch (effective) {
      case Prev::kStart:
      case Prev::kDot:
        fail(ErrorCategory::kAtomBeforeBondClosure, i);
      case Prev::kOpen:
        fail(ErrorCategory::kRingClosureInParens, i);
      case Prev::kClose:
        fail(prev_ == Prev::kBond ? ErrorCategory::kAtomBeforeBondClosure
                                  : ErrorCategory::kRingClosureAfterAtom,
             i);
      default:
        break;
    }
  }

  void ring_bond(std::size_t i, int number, std::size_t len) {
    check_ring_position(i);
    std::optional<BondOrder> order;
    if (pending_) order = pending_->order;
    tokens_.push_back(
        {SmilesTokenKind::kRing, std::string(text_.substr(i, len)), i});
    auto it = rings_.find(number);
    if (it == rings_.end()) {
      auto& slots = written_[static_cast<std::size_t>(current_)];
      rings_[number] = RingOpening{current_, order, slots.size()};
      slots.push_back(-1);
    } else {
      const RingOpening opening = it->second;
      rings_.erase(it);
      if (opening.atom == current_) {
        fail(ErrorCategory::kRingOpenCloseSameAtom, i);
      }
      for (int n : neighbors_[static_cast<std::size_t>(current_)]) {
        if (n == opening.atom) fail(ErrorCategory::kDuplicateBond, i);
      }
      if (opening.order && order && *opening.order != *order) {
        fail(ErrorCategory::kSingleBondSymbol, i);
      }
      written_[static_cast<std::size_t>(opening.atom)][opening.slot] =
          current_;
      written_[static_cast<std::size_t>(current_)].push_back(opening.atom);
      add_bond(opening.atom, current_, order ? order : opening.order, i);
    }
    pending_.reset();
    prev_ = Prev::kRing;
  }

  // --- end of input ---------------------------------------------------------

  void finish() {
    if (partial()) return;
    const std::size_t end = text_.size();
    if (!rings_.empty()) {
      fail(ErrorCategory::kUnclosedRings, end, static_cast<int>(rings_.size()));
    }
    if (!branches_.empty()) {
      fail(ErrorCategory::kUnclosedBranches, end,
           static_cast<int>(branches_.size()));
    }
    if (in_bracket_at_end_) {
      fail(ErrorCategory::kUnclosedSquareBracket, bracket_start_);
    }
    switch (prev_) {
      case Prev::kStart:
        fail(ErrorCategory::kElementRequired, end);
      case Prev::kBond:
      case Prev::kDot:
        fail(ErrorCategory::kAtomAfterBond, end);
      case Prev::kClose:
        fail(ErrorCategory::kFinalBranchInParens, end);
      default:
        break;
    }
  }

  ParsedSmiles build() {
    std::vector<Bond> bonds;
    bonds.reserve(bonds_.size());
    for (const BondDraft& d : bonds_) {
      bonds.push_back(Bond{d.a, d.b, d.order, d.aromatic, false});
    }
    for (auto& slots : written_) {
      std::erase(slots, -1);
    }
    ParsedSmiles parsed{MolecularGraph(atoms_, bonds, std::string(text_)),
                        std::move(tokens_), std::move(written_)};
    assign_hydrogens(parsed);
    return parsed;
  }

  // Implicit hydrogens for unbracketed atoms. Aromatic atoms count one
  // extra bond order when they must host a ring double bond.
  void assign_hydrogens(ParsedSmiles& parsed) {
    MolecularGraph& g = parsed.graph;
    std::vector<Atom> atoms = g.atoms();
    bool changed = false;
    for (int i = 0; i < g.atom_count(); ++i) {
      Atom& atom = atoms[static_cast<std::size_t>(i)];
      if (atom.bracket()) continue;
      const int sum = sums_[static_cast<std::size_t>(i)] +
                      (needs_ring_double_bond(g, i) ? 1 : 0);
      atom.hydrogens = valences_.implicit_hydrogens(atom.element, sum).value_or(0);
      changed = true;
    }
    if (changed) {
      g = MolecularGraph(std::move(atoms), g.bonds(), g.source());
    }
  }

  void final_valence_check(const MolecularGraph& g) {
    for (int i = 0; i < g.atom_count(); ++i) {
      const Atom& atom = g.atom(i);
      const int charge = atom.bracket() ? atom.formal_charge : 0;
      if (!valences_.allowed(atom.element, charge)) continue;
      const int sum = sums_[static_cast<std::size_t>(i)] +
                      (needs_ring_double_bond(g, i) ? 1 : 0);
      if (atom.bracket()) {
        if (!valences_.is_allowed(atom.element, charge, sum + atom.hydrogens)) {
          fail(ErrorCategory::kValence, atom.position);
        }
      } else if (!valences_.implicit_hydrogens(atom.element, sum)) {
        fail(ErrorCategory::kValence, atom.position);
      }
    }
  }

  std::string_view text_;
  ParseMode mode_;
  const ValenceTable& valences_;

  std::vector<Atom> atoms_;
  std::vector<int> sums_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<int>> written_;
  std::vector<BondDraft> bonds_;
  std::vector<SmilesToken> tokens_;
  std::vector<int> branches_;
  std::map<int, RingOpening> rings_;
  std::optional<PendingBond> pending_;
  Prev prev_ = Prev::kStart;
  Prev before_bond_ = Prev::kStart;
  int current_ = -1;
  bool in_bracket_at_end_ = false;
  std::size_t bracket_start_ = 0;
};

}  // namespace detail

/// Scan `text` without throwing; the error (if any) is the first failure in
/// scanning order.
inline ScanResult scan_smiles(std::string_view text,
                              ParseMode mode = ParseMode::kFull,
                              const ValenceTable& valences =
                                  default_valence_table()) {
  return detail::SmilesScanner(text, mode, valences).run();
}

/// Parse a complete SMILES string with its token layout.
inline ParsedSmiles parse_smiles_layout(std::string_view text) {
  ScanResult result = scan_smiles(text, ParseMode::kFull);
  if (result.error) throw *result.error;
  return std::move(result.parsed);
}

/// Parse a complete SMILES string into a molecular graph. Throws SmilesError
/// carrying the validator category on malformed input.
inline MolecularGraph parse_smiles(std::string_view text) {
  return parse_smiles_layout(text).graph;
}

}  // namespace npchem
