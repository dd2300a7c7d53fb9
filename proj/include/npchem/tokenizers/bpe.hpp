// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Byte-pair encoding over raw SMILES characters. Training counts adjacent
// symbol pairs over whole lines (SMILES has no word boundaries), merges the
// most frequent pair, ties going to the lexicographically smallest
// (left, right) texts, and stops at the target vocabulary size or when no
// pair occurs at least twice.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "npchem/tokenizers/vocabulary.hpp"

namespace npchem {

struct Merge {
  std::string left;
  std::string right;

  std::string merged() const { return left + right; }
  bool operator==(const Merge&) const = default;
};

using MergeList = std::vector<Merge>;

struct BpeModel {
  Vocabulary vocabulary;
  MergeList merges;
};

namespace detail {

struct PairHash {
  std::size_t operator()(const std::pair<int, int>& p) const noexcept {
    return std::hash<long long>()(
        (static_cast<long long>(p.first) << 32) ^ static_cast<unsigned>(p.second));
  }
};

class BpeTrainer {
 public:
  explicit BpeTrainer(const std::vector<std::string>& corpus) {
    std::map<std::string, long long> lines;
    for (const auto& line : corpus) {
      if (!line.empty()) ++lines[line];
    }
    std::set<char> alphabet;
    for (const auto& [line, count] : lines) {
      alphabet.insert(line.begin(), line.end());
    }
    for (char c : alphabet) symbol_id(std::string(1, c));
    alphabet_size_ = symbols_.size();
    for (const auto& [line, count] : lines) {
      Word w;
      w.count = count;
      for (char c : line) w.symbols.push_back(symbol_id(std::string(1, c)));
      words_.push_back(std::move(w));
    }
    for (std::size_t i = 0; i < words_.size(); ++i) add_pairs(i);
  }

  std::size_t alphabet_size() const { return alphabet_size_; }

  BpeModel train(std::size_t target_vocab) {
    std::vector<std::string> tokens(symbols_.begin(),
                                    symbols_.begin() + alphabet_size_);
    std::unordered_set<std::string> texts(tokens.begin(), tokens.end());
    MergeList merges;
    std::size_t size = kSpecialTokens.size() + tokens.size();
    while (size < target_vocab && !queue_.empty()) {
      const auto best = *queue_.begin();
      const long long count = -std::get<0>(best);
      if (count < 2) break;
      const int left = std::get<3>(best);
      const int right = std::get<4>(best);
      Merge m{symbols_[static_cast<std::size_t>(left)],
              symbols_[static_cast<std::size_t>(right)]};
      const int merged = symbol_id(m.merged());
      apply(left, right, merged);
      if (texts.insert(m.merged()).second) {
        tokens.push_back(m.merged());
        ++size;
      }
      merges.push_back(std::move(m));
    }
    return {Vocabulary::from_tokens(tokens), std::move(merges)};
  }

 private:
  struct Word {
    std::vector<int> symbols;
    long long count = 0;
  };

  // (-count, left text, right text, left id, right id); begin() is the
  // most frequent pair with the smallest texts.
  using Entry = std::tuple<long long, std::string, std::string, int, int>;

  int symbol_id(const std::string& text) {
    const auto it = symbol_ids_.find(text);
    if (it != symbol_ids_.end()) return it->second;
    const int id = static_cast<int>(symbols_.size());
    symbols_.push_back(text);
    symbol_ids_.emplace(text, id);
    return id;
  }

  void bump(const std::pair<int, int>& pair, long long delta) {
    long long& count = counts_[pair];
    if (count > 0) queue_.erase(entry(pair, count));
    count += delta;
    if (count > 0) {
      queue_.insert(entry(pair, count));
    } else {
      counts_.erase(pair);
    }
  }

  Entry entry(const std::pair<int, int>& pair, long long count) const {
    return {-count, symbols_[static_cast<std::size_t>(pair.first)],
            symbols_[static_cast<std::size_t>(pair.second)], pair.first,
            pair.second};
  }

  void add_pairs(std::size_t w) {
    const Word& word = words_[w];
    for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i) {
      const std::pair<int, int> p{word.symbols[i], word.symbols[i + 1]};
      bump(p, word.count);
      where_[p].insert(w);
    }
  }

  void remove_pairs(std::size_t w) {
    const Word& word = words_[w];
    for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i) {
      bump({word.symbols[i], word.symbols[i + 1]}, -word.count);
    }
  }

  void apply(int left, int right, int merged) {
    const std::pair<int, int> key{left, right};
    const auto it = where_.find(key);
    if (it == where_.end()) return;
    std::vector<std::size_t> affected(it->second.begin(), it->second.end());
    where_.erase(it);
    std::sort(affected.begin(), affected.end());
    for (std::size_t w : affected) {
      Word& word = words_[w];
      bool present = false;
      for (std::size_t i = 0; i + 1 < word.symbols.size() && !present; ++i) {
        present = word.symbols[i] == left && word.symbols[i + 1] == right;
      }
      if (!present) continue;
      remove_pairs(w);
      word.symbols = merge_symbols(word.symbols, left, right, merged);
      add_pairs(w);
    }
  }

 public:
  /// Replace every non-overlapping (left, right) occurrence, scanning left
  /// to right.
  static std::vector<int> merge_symbols(const std::vector<int>& in, int left,
                                        int right, int merged) {
    std::vector<int> out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (i + 1 < in.size() && in[i] == left && in[i + 1] == right) {
        out.push_back(merged);
        ++i;
      } else {
        out.push_back(in[i]);
      }
    }
    return out;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> symbol_ids_;
  std::size_t alphabet_size_ = 0;
  std::vector<Word> words_;
  std::unordered_map<std::pair<int, int>, long long, PairHash> counts_;
  std::unordered_map<std::pair<int, int>, std::unordered_set<std::size_t>,
                     PairHash>
      where_;
  std::set<Entry> queue_;
};

}  // namespace detail

/// Learn merges until the vocabulary (specials included) reaches
/// `target_vocab` or no pair occurs twice. Throws std::invalid_argument on
/// an empty corpus or a target below the base alphabet plus specials.
inline BpeModel train_bpe(const std::vector<std::string>& corpus,
                          std::size_t target_vocab) {
  detail::BpeTrainer trainer(corpus);
  if (trainer.alphabet_size() == 0) {
    throw std::invalid_argument("cannot train BPE on an empty corpus");
  }
  const std::size_t base = trainer.alphabet_size() + kSpecialTokens.size();
  if (target_vocab < base) {
    throw std::invalid_argument(
        "target vocabulary " + std::to_string(target_vocab) +
        " is smaller than the base alphabet plus specials (" +
        std::to_string(base) + ")");
  }
  return trainer.train(target_vocab);
}

/// Split `text` into characters and apply merges: repeatedly take the
/// present pair with the earliest merge rank and merge all of its
/// occurrences left to right.
class BpeEncoder {
 public:
  explicit BpeEncoder(const MergeList& merges) : merges_(merges) {
    for (std::size_t r = 0; r < merges.size(); ++r) {
      // First rank wins for a repeated pair.
      ranks_.emplace(std::make_pair(merges[r].left, merges[r].right), r);
    }
  }

  std::vector<std::string> encode(std::string_view text) const {
    std::vector<std::string> parts;
    parts.reserve(text.size());
    for (char c : text) parts.emplace_back(1, c);
    while (parts.size() > 1) {
      std::size_t best = kNone;
      for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        const auto it = ranks_.find({parts[i], parts[i + 1]});
        if (it != ranks_.end() && it->second < best) best = it->second;
      }
      if (best == kNone) break;
      const Merge& m = merges_[best];
      std::vector<std::string> next;
      next.reserve(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i + 1 < parts.size() && parts[i] == m.left &&
            parts[i + 1] == m.right) {
          next.push_back(m.merged());
          ++i;
        } else {
          next.push_back(std::move(parts[i]));
        }
      }
      parts = std::move(next);
    }
    return parts;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  MergeList merges_;
  std::map<std::pair<std::string, std::string>, std::size_t> ranks_;
};

inline std::vector<std::string> tokenize_bpe(const MergeList& merges,
                                             std::string_view text) {
  return BpeEncoder(merges).encode(text);
}

/// One merge per line, "left right".
inline std::string merges_to_text(const MergeList& merges) {
  std::string out;
  for (const auto& m : merges) {
    out += m.left;
    out += ' ';
    out += m.right;
    out += '\n';
  }
  return out;
}

inline MergeList merges_from_text(std::string_view text) {
  MergeList out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto space = line.find(' ');
    if (space == std::string_view::npos || space == 0 ||
        space + 1 >= line.size() ||
        line.find(' ', space + 1) != std::string_view::npos) {
      throw std::invalid_argument("malformed merge on line " +
                                  std::to_string(line_no));
    }
    out.push_back({std::string(line.substr(0, space)),
                   std::string(line.substr(space + 1))});
  }
  return out;
}

}  // namespace npchem
