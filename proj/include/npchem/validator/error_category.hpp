// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// The 21 SMILES failure categories reported by partial-SMILES validation,
// worded exactly as in the generation error-analysis tables. Six syntax
// categories mark long-range dependency failures (rings, branches and
// brackets left open or closed out of place).

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace npchem {

enum class ErrorKind { kSyntax, kValence, kKekulization };

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSyntax: return "syntax";
    case ErrorKind::kValence: return "valence";
    case ErrorKind::kKekulization: return "kekulization";
  }
  return "syntax";
}

// Table label prefix ("Syntax", "Valence", "Kekulization").
inline std::string_view kind_label(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSyntax: return "Syntax";
    case ErrorKind::kValence: return "Valence";
    case ErrorKind::kKekulization: return "Kekulization";
  }
  return "Syntax";
}

// Ordered as the rows of the all-error-types table.
enum class ErrorCategory : int {
  kUnclosedRings = 0,
  kUnmatchedCloseParen,
  kKekulization,
  kUnclosedBranches,
  kValence,
  kDuplicateBond,
  kIllegalCharacter,
  kRingClosureAfterAtom,
  kMissingCloseBracket,
  kFinalBranchInParens,
  kAtomBeforeOpenParen,
  kRingOpenCloseSameAtom,
  kSingleBondSymbol,
  kRingClosureInParens,
  kAtomBeforeBond,
  kEmptyBranch,
  kBondBeforeOpenParen,
  kAtomAfterBond,
  kElementRequired,
  kAtomBeforeBondClosure,
  kUnclosedSquareBracket,
};

inline constexpr std::size_t kErrorCategoryCount = 21;

struct ErrorCategoryInfo {
  ErrorCategory category;
  ErrorKind kind;
  std::string_view message;
  bool long_range;
};

inline constexpr std::array<ErrorCategoryInfo, kErrorCategoryCount>
    kErrorCategories = {{
        {ErrorCategory::kUnclosedRings, ErrorKind::kSyntax,
         "N ring openings have not been closed", true},
        {ErrorCategory::kUnmatchedCloseParen, ErrorKind::kSyntax,
         "Unmatched close parenthesis", true},
        {ErrorCategory::kKekulization, ErrorKind::kKekulization,
         "Aromatic system cannot be kekulized", false},
        {ErrorCategory::kUnclosedBranches, ErrorKind::kSyntax,
         "N branches have not been closed", true},
        {ErrorCategory::kValence, ErrorKind::kValence,
         "Uncommon valence or charge state", false},
        {ErrorCategory::kDuplicateBond, ErrorKind::kSyntax,
         "Cannot have a second bond between the same atoms", false},
        {ErrorCategory::kIllegalCharacter, ErrorKind::kSyntax,
         "Illegal character", false},
        {ErrorCategory::kRingClosureAfterAtom, ErrorKind::kSyntax,
         "Ring closure symbols must immediately follow an atom", false},
        {ErrorCategory::kMissingCloseBracket, ErrorKind::kSyntax,
         "Missing the close bracket", true},
        {ErrorCategory::kFinalBranchInParens, ErrorKind::kSyntax,
         "The final branch should not be within parentheses", true},
        {ErrorCategory::kAtomBeforeOpenParen, ErrorKind::kSyntax,
         "An atom must precede an open parenthesis", false},
        {ErrorCategory::kRingOpenCloseSameAtom, ErrorKind::kSyntax,
         "Cannot have a bond opening and closing on the same atom", false},
        {ErrorCategory::kSingleBondSymbol, ErrorKind::kSyntax,
         "Only a single bond symbol should be used", false},
        {ErrorCategory::kRingClosureInParens, ErrorKind::kSyntax,
         "Ring closure symbols should not be in parentheses", false},
        {ErrorCategory::kAtomBeforeBond, ErrorKind::kSyntax,
         "An atom must precede a bond symbol", false},
        {ErrorCategory::kEmptyBranch, ErrorKind::kSyntax,
         "Empty branches are not allowed", false},
        {ErrorCategory::kBondBeforeOpenParen, ErrorKind::kSyntax,
         "A bond symbol should not precede an open parenthesis", false},
        {ErrorCategory::kAtomAfterBond, ErrorKind::kSyntax,
         "An atom must follow a bond symbol", false},
        {ErrorCategory::kElementRequired, ErrorKind::kSyntax,
         "An element symbol is required", false},
        {ErrorCategory::kAtomBeforeBondClosure, ErrorKind::kSyntax,
         "An atom must precede a bond closure symbol", false},
        {ErrorCategory::kUnclosedSquareBracket, ErrorKind::kSyntax,
         "An open square brackets is present without the corresponding "
         "close square brackets",
         true},
    }};

inline const ErrorCategoryInfo& info(ErrorCategory category) {
  const auto index = static_cast<std::size_t>(category);
  if (index >= kErrorCategoryCount) {
    throw std::invalid_argument("unknown error category");
  }
  return kErrorCategories[index];
}

/// Message with the leading "N" replaced by `count` for the two
/// parameterised categories; other messages are returned verbatim.
inline std::string render_message(ErrorCategory category, int count) {
  std::string_view message = info(category).message;
  if (message.starts_with("N ")) {
    return std::to_string(count) + std::string(message.substr(1));
  }
  return std::string(message);
}

/// Failure raised by the SMILES parser and kekulizer. Carries the category
/// so callers can fold it into an error profile.
class SmilesError : public std::runtime_error {
 public:
  SmilesError(ErrorCategory category, std::size_t position, std::string detail)
      : std::runtime_error(detail),
        category_(category),
        position_(position),
        detail_(std::move(detail)) {}

  ErrorCategory category() const noexcept { return category_; }
  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCategory category_;
  std::size_t position_;
  std::string detail_;
};

}  // namespace npchem
