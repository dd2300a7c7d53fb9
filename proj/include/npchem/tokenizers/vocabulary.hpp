// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace npchem {

inline constexpr std::string_view kPadToken = "[PAD]";
inline constexpr std::string_view kUnkToken = "[UNK]";
inline constexpr std::string_view kBosToken = "[BOS]";
inline constexpr std::string_view kEosToken = "[EOS]";

inline constexpr std::array<std::string_view, 4> kSpecialTokens = {
    kPadToken, kUnkToken, kBosToken, kEosToken};

/// Immutable token <-> id map. Ids are dense; the four special tokens are
/// always present.
class Vocabulary {
 public:
  /// Specials first (ids 0..3), then `tokens` in order. Repeated texts keep
  /// their first id.
  static Vocabulary from_tokens(const std::vector<std::string>& tokens) {
    std::vector<std::string> all(kSpecialTokens.begin(), kSpecialTokens.end());
    all.insert(all.end(), tokens.begin(), tokens.end());
    return Vocabulary(std::move(all));
  }

  /// Tokens listed by id. Throws unless every special token is present and
  /// texts are unique.
  explicit Vocabulary(std::vector<std::string> by_id) {
    for (auto& text : by_id) {
      if (ids_.contains(text)) continue;
      ids_.emplace(text, static_cast<int>(tokens_.size()));
      tokens_.push_back(std::move(text));
    }
    for (std::size_t i = 0; i < kSpecialTokens.size(); ++i) {
      const auto it = ids_.find(std::string(kSpecialTokens[i]));
      if (it == ids_.end()) {
        throw std::invalid_argument("vocabulary lacks special token " +
                                    std::string(kSpecialTokens[i]));
      }
      specials_[i] = it->second;
    }
  }

  Vocabulary() : Vocabulary(std::vector<std::string>(kSpecialTokens.begin(),
                                                     kSpecialTokens.end())) {}

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::optional<int> find(std::string_view text) const {
    const auto it = ids_.find(std::string(text));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(std::string_view text) const { return find(text).has_value(); }

  /// Id of `text`, or the [UNK] id.
  int id(std::string_view text) const { return find(text).value_or(unk_id()); }

  const std::string& text(int id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
      throw std::out_of_range("token id " + std::to_string(id) +
                              " is not in the vocabulary");
    }
    return tokens_[static_cast<std::size_t>(id)];
  }

  int pad_id() const { return specials_[0]; }
  int unk_id() const { return specials_[1]; }
  int bos_id() const { return specials_[2]; }
  int eos_id() const { return specials_[3]; }
  bool is_special(int id) const {
    for (int s : specials_) {
      if (s == id) return true;
    }
    return false;
  }

  /// Non-special token texts, in id order.
  std::vector<std::string> regular_tokens() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (!is_special(static_cast<int>(i))) out.push_back(tokens_[i]);
    }
    return out;
  }

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
  std::array<int, 4> specials_{};
};

/// {"tokens": {text: id, ...}, "specials": [texts]} with tokens in id order.
inline nlohmann::ordered_json to_json(const Vocabulary& v) {
  nlohmann::ordered_json out;
  nlohmann::ordered_json tokens = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < v.size(); ++i) {
    tokens[v.tokens()[i]] = i;
  }
  out["tokens"] = std::move(tokens);
  out["specials"] = nlohmann::ordered_json::array();
  for (auto s : kSpecialTokens) out["specials"].push_back(s);
  return out;
}

/// Inverse of to_json. Ids must be dense and unique and the listed specials
/// must be present.
inline Vocabulary vocabulary_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("tokens") || !j["tokens"].is_object()) {
    throw std::invalid_argument("vocabulary JSON needs a \"tokens\" object");
  }
  const auto& tokens = j["tokens"];
  std::vector<std::optional<std::string>> by_id(tokens.size());
  for (const auto& [text, value] : tokens.items()) {
    if (!value.is_number_integer()) {
      throw std::invalid_argument("token id for '" + text + "' is not an integer");
    }
    const auto id = value.get<long long>();
    if (id < 0 || static_cast<std::size_t>(id) >= by_id.size() ||
        by_id[static_cast<std::size_t>(id)]) {
      throw std::invalid_argument("token ids must be dense and unique");
    }
    by_id[static_cast<std::size_t>(id)] = text;
  }
  std::vector<std::string> ordered;
  for (auto& t : by_id) ordered.push_back(*t);
  if (j.contains("specials")) {
    for (const auto& s : j["specials"]) {
      if (!tokens.contains(s.get<std::string>())) {
        throw std::invalid_argument("special token missing: " +
                                    s.get<std::string>());
      }
    }
  }
  return Vocabulary(std::move(ordered));
}

/// |A ∩ B| / |A ∪ B| over non-special token texts; 1 for two empty sets.
inline double vocab_jaccard(const Vocabulary& a, const Vocabulary& b) {
  const auto ta = a.regular_tokens();
  const auto tb = b.regular_tokens();
  std::size_t shared = 0;
  for (const auto& t : ta) {
    const auto id = b.find(t);
    shared += id && !b.is_special(*id);
  }
  const std::size_t uni = ta.size() + tb.size() - shared;
  if (uni == 0) return 1.0;
  return static_cast<double>(shared) / static_cast<double>(uni);
}

}  // namespace npchem
