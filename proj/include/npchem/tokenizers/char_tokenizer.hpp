// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "npchem/tokenizers/vocabulary.hpp"

namespace npchem {

/// One token per byte.
inline std::vector<std::string> tokenize_char(std::string_view text) {
  std::vector<std::string> out;
  out.reserve(text.size());
  for (char c : text) out.emplace_back(1, c);
  return out;
}

/// Specials followed by the sorted character alphabet of `corpus`.
inline Vocabulary build_char_vocabulary(const std::vector<std::string>& corpus) {
  std::set<char> alphabet;
  for (const auto& line : corpus) alphabet.insert(line.begin(), line.end());
  std::vector<std::string> tokens;
  for (char c : alphabet) tokens.emplace_back(1, c);
  return Vocabulary::from_tokens(tokens);
}

}  // namespace npchem
