// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Corruptions of valid SMILES with a known resulting error category. Each
// function returns nullopt when its precondition does not hold for the
// given string.

#include <cctype>
#include <optional>
#include <regex>
#include <string>

namespace npchem::testing {

enum class Mutation {
  kDeleteRingDigit,   // -> "1 ring openings have not been closed"
  kDropOpenParen,     // -> "Unmatched close parenthesis"
  kFifthCarbonBond,   // -> "Uncommon valence or charge state"
  kShrinkAromatic,    // -> "Aromatic system cannot be kekulized"
};

/// Remove the last ring-closure token (and a bond symbol written in front
/// of it). Every ring is closed in a valid string, so the last digit is a
/// closing one and nothing after it refers to the ring.
inline std::optional<std::string> delete_last_ring_digit(const std::string& s) {
  bool in_bracket = false;
  std::optional<std::size_t> start;
  std::size_t length = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '[') in_bracket = true;
    if (c == ']') in_bracket = false;
    if (in_bracket) continue;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      start = i;
      length = 1;
    } else if (c == '%') {
      start = i;
      length = 3;
      i += 2;
    }
  }
  if (!start) return std::nullopt;
  std::size_t from = *start;
  if (from > 0 && std::string("-=#:").find(s[from - 1]) != std::string::npos) {
    --from;
  }
  std::string out = s;
  out.erase(from, *start + length - from);
  return out;
}

/// Drop the first '('; the bonds up to the matching ')' are unchanged, so
/// that ')' is the first failure.
inline std::optional<std::string> drop_first_open_paren(const std::string& s) {
  const auto pos = s.find('(');
  if (pos == std::string::npos) return std::nullopt;
  return s.substr(0, pos) + s.substr(pos + 1);
}

/// Hang four methyl branches on the first plain aliphatic carbon that
/// already has a neighbour, after any ring digits it carries.
inline std::optional<std::string> add_fifth_carbon_bond(const std::string& s) {
  bool in_bracket = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '[') in_bracket = true;
    if (c == ']') in_bracket = false;
    if (in_bracket || c != 'C') continue;
    if (i + 1 < s.size() && s[i + 1] == 'l') continue;
    const bool alone = (i == 0 || s[i - 1] == '.') &&
                       (i + 1 == s.size() || s[i + 1] == '.');
    if (alone) continue;
    std::size_t end = i + 1;
    while (end < s.size()) {
      if (std::isdigit(static_cast<unsigned char>(s[end]))) {
        ++end;
      } else if (s[end] == '%') {
        end += 3;
      } else if (std::string("-=#:").find(s[end]) != std::string::npos &&
                 end + 1 < s.size() &&
                 (std::isdigit(static_cast<unsigned char>(s[end + 1])) ||
                  s[end + 1] == '%')) {
        ++end;
      } else {
        break;
      }
    }
    return s.substr(0, end) + "(C)(C)(C)(C)" + s.substr(end);
  }
  return std::nullopt;
}

/// Replace an isolated, unbranched benzene "cNccccN" with "cNccN".
inline std::optional<std::string> shrink_benzene(const std::string& s) {
  static const std::regex kBenzene(R"(c([1-9])ccccc\1(?![0-9%]))");
  std::smatch m;
  auto begin = s.cbegin();
  while (std::regex_search(begin, s.cend(), m, kBenzene)) {
    const auto pos = static_cast<std::size_t>(m.position(0) + (begin - s.cbegin()));
    const char before = pos == 0 ? '\0' : s[pos - 1];
    const bool isolated = before == '\0' || before == '(' || before == '-' ||
                          std::string("CNOSlr").find(before) != std::string::npos;
    if (isolated) {
      const std::string d = m[1].str();
      return s.substr(0, pos) + "c" + d + "cc" + d +
             s.substr(pos + static_cast<std::size_t>(m.length(0)));
    }
    begin += m.position(0) + 1;
  }
  return std::nullopt;
}

/// Fallback for strings without an isolated benzene: add a three-membered
/// aromatic ring as a second component.
inline std::string append_small_aromatic(const std::string& s) {
  return s + ".c1cc1";
}

inline std::optional<std::string> mutate(Mutation kind, const std::string& s) {
  switch (kind) {
    case Mutation::kDeleteRingDigit: return delete_last_ring_digit(s);
    case Mutation::kDropOpenParen: return drop_first_open_paren(s);
    case Mutation::kFifthCarbonBond: return add_fifth_carbon_bond(s);
    case Mutation::kShrinkAromatic: {
      auto shrunk = shrink_benzene(s);
      return shrunk ? shrunk : append_small_aromatic(s);
    }
  }
  return std::nullopt;
}

inline const char* expected_message(Mutation kind) {
  switch (kind) {
    case Mutation::kDeleteRingDigit: return "1 ring openings have not been closed";
    case Mutation::kDropOpenParen: return "Unmatched close parenthesis";
    case Mutation::kFifthCarbonBond: return "Uncommon valence or charge state";
    case Mutation::kShrinkAromatic: return "Aromatic system cannot be kekulized";
  }
  return "";
}

}  // namespace npchem::testing
