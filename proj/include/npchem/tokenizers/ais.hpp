// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Atom-in-SMILES tokens: every atom token becomes
// "[central;R|!R;neighbours]" while ring digits, bonds, parentheses and
// dots stay as they are.
//
// Chirality. The central field of a stereocentre is written relative to
// the order in which its bonds are created while parsing (ring bonds are
// created when the ring closes), not the order in which its neighbours
// appear in the text. When the two orders differ by an odd permutation the
// tag is inverted, so "[C@@H]3" whose ring partner is written before the
// chain neighbour but bonded after it becomes "[C@H]". Decoding applies the
// same inversion and recovers the input text.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "npchem/smiles/parser.hpp"
#include "npchem/smiles/writer.hpp"
#include "npchem/tokenizers/vocabulary.hpp"

namespace npchem {

struct AisToken {
  std::string central;    // e.g. "CH3", "c", "[C@H]", "[nH]"
  bool in_ring = false;
  std::string neighbors;  // sorted neighbour symbols, e.g. "CCO"

  std::string render() const {
    return "[" + central + ";" + (in_ring ? "R" : "!R") + ";" + neighbors + "]";
  }

  /// Parse "[central;R|!R;neighbours]"; nullopt for anything else.
  static std::optional<AisToken> parse(std::string_view text) {
    if (text.size() < 5 || text.front() != '[' || text.back() != ']') {
      return std::nullopt;
    }
    const std::string_view body = text.substr(1, text.size() - 2);
    const auto last = body.rfind(';');
    if (last == std::string_view::npos || last == 0) return std::nullopt;
    const auto mid = body.rfind(';', last - 1);
    if (mid == std::string_view::npos || mid == 0) return std::nullopt;
    const std::string_view flag = body.substr(mid + 1, last - mid - 1);
    if (flag != "R" && flag != "!R") return std::nullopt;
    return AisToken{std::string(body.substr(0, mid)), flag == "R",
                    std::string(body.substr(last + 1))};
  }

  bool operator==(const AisToken&) const = default;
};

namespace detail {

inline bool odd_permutation(const std::vector<int>& from,
                            const std::vector<int>& to) {
  if (from.size() != to.size()) return false;
  std::vector<int> perm;
  perm.reserve(from.size());
  for (int v : from) {
    const auto it = std::find(to.begin(), to.end(), v);
    if (it == to.end()) return false;
    perm.push_back(static_cast<int>(it - to.begin()));
  }
  bool odd = false;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      odd ^= perm[i] > perm[j];
    }
  }
  return odd;
}

/// True when the tag of a stereocentre must be inverted between its
/// written form and its token form.
inline bool chirality_inverted(const ParsedSmiles& parsed, int atom) {
  const MolecularGraph& g = parsed.graph;
  if (g.atom(atom).chirality == Chirality::kNone) return false;
  std::vector<int> created;
  for (const Neighbor& n : g.neighbors(atom)) created.push_back(n.atom);
  return odd_permutation(parsed.written_neighbors[static_cast<std::size_t>(atom)],
                         created);
}

inline Chirality inverted(Chirality c) {
  switch (c) {
    case Chirality::kClockwise: return Chirality::kCounterClockwise;
    case Chirality::kCounterClockwise: return Chirality::kClockwise;
    case Chirality::kNone: return Chirality::kNone;
  }
  return c;
}

inline std::string ais_central(const ParsedSmiles& parsed, int index) {
  const MolecularGraph& g = parsed.graph;
  Atom atom = g.atom(index);
  if (writable_unbracketed(g, index)) {
    std::string out = symbol_text(atom);
    if (atom.hydrogens > 0) {
      out += 'H';
      if (atom.hydrogens > 1) out += std::to_string(atom.hydrogens);
    }
    return out;
  }
  if (chirality_inverted(parsed, index)) atom.chirality = inverted(atom.chirality);
  return bracket_atom_text(atom);
}

}  // namespace detail

/// AIS token for atom `index` of a parsed string.
inline AisToken ais_token(const ParsedSmiles& parsed, int index) {
  const MolecularGraph& g = parsed.graph;
  std::vector<std::string> symbols;
  for (const Neighbor& n : g.neighbors(index)) {
    symbols.push_back(symbol_text(g.atom(n.atom)));
  }
  std::sort(symbols.begin(), symbols.end());
  std::string neighbors;
  for (const auto& s : symbols) neighbors += s;
  return AisToken{detail::ais_central(parsed, index), g.atom(index).in_ring,
                  std::move(neighbors)};
}

/// Tokenize a complete SMILES string. Parse failures propagate as
/// SmilesError.
inline std::vector<std::string> tokenize_ais(std::string_view text) {
  const ParsedSmiles parsed = parse_smiles_layout(text);
  std::vector<std::string> out;
  out.reserve(parsed.tokens.size());
  for (const SmilesToken& t : parsed.tokens) {
    if (t.kind == SmilesTokenKind::kAtom) {
      out.push_back(ais_token(parsed, t.atom).render());
    } else {
      out.push_back(t.text);
    }
  }
  return out;
}

namespace detail {

/// SMILES atom text for a central field: bracket forms are kept, plain
/// forms lose their hydrogen count ("CH3" -> "C", "cH" -> "c").
inline std::string central_atom_text(const std::string& central) {
  if (!central.empty() && central.front() == '[') return central;
  if (central.starts_with("Cl") || central.starts_with("Br")) {
    return central.substr(0, 2);
  }
  if (central.empty()) throw std::invalid_argument("empty AIS central field");
  return central.substr(0, 1);
}

inline void swap_chirality_text(std::string& atom_text) {
  const auto at = atom_text.find('@');
  if (at == std::string::npos) return;
  if (at + 1 < atom_text.size() && atom_text[at + 1] == '@') {
    atom_text.erase(at, 1);
  } else {
    atom_text.insert(at, 1, '@');
  }
}

}  // namespace detail

/// Rebuild SMILES text from AIS and structural tokens.
inline std::string decode_ais(const std::vector<std::string>& tokens) {
  std::vector<std::string> pieces;
  std::vector<std::size_t> atom_pieces;
  for (const auto& t : tokens) {
    if (const auto ais = AisToken::parse(t)) {
      atom_pieces.push_back(pieces.size());
      pieces.push_back(detail::central_atom_text(ais->central));
    } else {
      pieces.push_back(t);
    }
  }
  std::string text;
  for (const auto& p : pieces) text += p;
  if (text.find('@') == std::string::npos) return text;
  const ScanResult scan = scan_smiles(text, ParseMode::kFull);
  if (scan.error) return text;
  // Atom tokens come out of the parser in the same order as the AIS tokens.
  bool changed = false;
  int atom = 0;
  for (std::size_t piece : atom_pieces) {
    if (detail::chirality_inverted(scan.parsed, atom)) {
      detail::swap_chirality_text(pieces[piece]);
      changed = true;
    }
    ++atom;
  }
  if (!changed) return text;
  text.clear();
  for (const auto& p : pieces) text += p;
  return text;
}

/// Specials followed by the sorted set of AIS tokens of every parsable line.
inline Vocabulary build_ais_vocabulary(const std::vector<std::string>& corpus) {
  std::set<std::string> seen;
  for (const auto& line : corpus) {
    try {
      for (auto& t : tokenize_ais(line)) seen.insert(std::move(t));
    } catch (const SmilesError&) {
    }
  }
  return Vocabulary::from_tokens({seen.begin(), seen.end()});
}

}  // namespace npchem
