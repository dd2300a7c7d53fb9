// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "npchem/tokenizers/ais.hpp"
#include "npchem/tokenizers/bpe.hpp"
#include "npchem/tokenizers/char_tokenizer.hpp"
#include "npchem/tokenizers/vocabulary.hpp"

namespace npchem {

enum class Scheme { kChar, kAis, kBpe };

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::kChar: return "char";
    case Scheme::kAis: return "ais";
    case Scheme::kBpe: return "bpe";
  }
  return "";
}

inline Scheme scheme_from_string(std::string_view name) {
  if (name == "char") return Scheme::kChar;
  if (name == "ais") return Scheme::kAis;
  if (name == "bpe") return Scheme::kBpe;
  throw std::invalid_argument("unknown tokenization scheme '" +
                              std::string(name) + "'");
}

inline constexpr std::size_t kDefaultMaxLength = 512;

struct TokenSequence {
  std::vector<int> ids;
  std::vector<std::string> texts;
};

struct EncodeOptions {
  std::size_t max_len = kDefaultMaxLength;  // 0 disables truncation
  bool pad = false;
  bool add_special = true;  // [BOS] ... [EOS]
};

/// A vocabulary together with the scheme (and merges, for BPE) that
/// produced it.
class Tokenizer {
 public:
  Tokenizer(Scheme scheme, Vocabulary vocabulary, MergeList merges = {})
      : scheme_(scheme),
        vocabulary_(std::move(vocabulary)),
        merges_(std::move(merges)),
        bpe_(merges_) {}

  Scheme scheme() const { return scheme_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  const MergeList& merges() const { return merges_; }

  /// Token texts before id lookup. AIS propagates parse failures.
  std::vector<std::string> split(std::string_view text) const {
    switch (scheme_) {
      case Scheme::kChar: return tokenize_char(text);
      case Scheme::kAis: return tokenize_ais(text);
      case Scheme::kBpe: return bpe_.encode(text);
    }
    return {};
  }

  TokenSequence encode(std::string_view text,
                       const EncodeOptions& options = {}) const {
    TokenSequence seq;
    auto push = [&](int id) {
      seq.ids.push_back(id);
      seq.texts.push_back(vocabulary_.text(id));
    };
    if (options.add_special) push(vocabulary_.bos_id());
    for (const auto& t : split(text)) push(vocabulary_.id(t));
    if (options.add_special) push(vocabulary_.eos_id());
    if (options.max_len > 0 && seq.ids.size() > options.max_len) {
      seq.ids.resize(options.max_len);
      seq.texts.resize(options.max_len);
    }
    if (options.pad) {
      while (seq.ids.size() < options.max_len) push(vocabulary_.pad_id());
    }
    return seq;
  }

  /// Concatenate token texts, dropping specials. Throws std::out_of_range
  /// for ids outside the vocabulary.
  std::string decode(const std::vector<int>& ids) const {
    std::vector<std::string> texts;
    for (int id : ids) {
      const std::string& t = vocabulary_.text(id);
      if (!vocabulary_.is_special(id)) texts.push_back(t);
    }
    if (scheme_ == Scheme::kAis) return decode_ais(texts);
    std::string out;
    for (const auto& t : texts) out += t;
    return out;
  }

 private:
  Scheme scheme_;
  Vocabulary vocabulary_;
  MergeList merges_;
  BpeEncoder bpe_;
};

struct TokenStats {
  std::size_t sequences = 0;
  std::size_t skipped = 0;  // lines the scheme could not tokenize
  double mean_length = 0.0;
  double median_length = 0.0;
  // (token, count) by descending count, ties by token text.
  std::vector<std::pair<std::string, std::size_t>> rank_frequency;
};

/// Length and frequency statistics without special tokens. Out-of-vocabulary
/// tokens are counted as [UNK].
inline TokenStats token_stats(const Tokenizer& tokenizer,
                              const std::vector<std::string>& corpus) {
  TokenStats stats;
  std::vector<std::size_t> lengths;
  std::map<std::string, std::size_t> freq;
  const Vocabulary& v = tokenizer.vocabulary();
  for (const auto& line : corpus) {
    std::vector<std::string> tokens;
    try {
      tokens = tokenizer.split(line);
    } catch (const SmilesError&) {
      ++stats.skipped;
      continue;
    }
    lengths.push_back(tokens.size());
    for (const auto& t : tokens) ++freq[v.contains(t) ? t : std::string(kUnkToken)];
  }
  stats.sequences = lengths.size();
  if (!lengths.empty()) {
    double sum = 0.0;
    for (auto n : lengths) sum += static_cast<double>(n);
    stats.mean_length = sum / static_cast<double>(lengths.size());
    std::sort(lengths.begin(), lengths.end());
    const std::size_t mid = lengths.size() / 2;
    stats.median_length =
        lengths.size() % 2 ? static_cast<double>(lengths[mid])
                           : (static_cast<double>(lengths[mid - 1]) +
                              static_cast<double>(lengths[mid])) / 2.0;
  }
  stats.rank_frequency.assign(freq.begin(), freq.end());
  std::stable_sort(stats.rank_frequency.begin(), stats.rank_frequency.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return stats;
}

}  // namespace npchem
