// Copyright 2026 The Xapi Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "xapi/error.hpp"

namespace xapi {

/// Semantic class of a verb. The executor dispatches on this, never on the
/// verb's spelling (meta-scene verbs are sub-dispatched on their word).
enum class VerbCategory {
  action,
  relation,
  relation_terminating,
  attribute,
  change,
  identity,
  exists,
  quote,
  achieves,
  uses,
  meta_scene,
  summary,
  utter,
  membership,
};

inline constexpr std::array<std::pair<VerbCategory, std::string_view>, 14> kVerbCategoryNames{{
    {VerbCategory::action, "action"},
    {VerbCategory::relation, "relation"},
    {VerbCategory::relation_terminating, "relation-terminating"},
    {VerbCategory::attribute, "attribute"},
    {VerbCategory::change, "change"},
    {VerbCategory::identity, "identity"},
    {VerbCategory::exists, "exists"},
    {VerbCategory::quote, "quote"},
    {VerbCategory::achieves, "achieves"},
    {VerbCategory::uses, "uses"},
    {VerbCategory::meta_scene, "meta-scene"},
    {VerbCategory::summary, "summary"},
    {VerbCategory::utter, "utter"},
    {VerbCategory::membership, "membership"},
}};

inline std::string_view to_string(VerbCategory category) {
  for (const auto& [value, name] : kVerbCategoryNames)
    if (value == category) return name;
  return "?";
}

inline std::optional<VerbCategory> parse_verb_category(std::string_view name) {
  for (const auto& [value, name_] : kVerbCategoryNames)
    if (name_ == name) return value;
  return std::nullopt;
}

struct ConceptEntry {
  std::string word;
  std::set<std::string> implies;
  std::set<std::string> excludes;

  friend bool operator==(const ConceptEntry&, const ConceptEntry&) = default;
};

struct VerbEntry {
  std::string word;
  VerbCategory category = VerbCategory::action;
  bool negated = false;

  /// The positive form (`not-is-inside` -> `is-inside`).
  std::string_view base_word() const {
    return negated ? std::string_view(word).substr(4) : std::string_view(word);
  }

  friend bool operator==(const VerbEntry&, const VerbEntry&) = default;
};

using LexiconEntry = std::variant<ConceptEntry, VerbEntry>;

/// Words the grammar consumes itself; they can never be registered.
inline bool is_reserved_word(std::string_view word) {
  static constexpr std::array<std::string_view, 10> kReserved{
      "a", "an", "the", "thus", "in-summary", "of", "in", "scene", "text", "none"};
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

/// Lowercase alphanumerics, single interior hyphens allowed.
inline bool is_valid_word(std::string_view word) {
  if (word.empty() || word.front() == '-' || word.back() == '-') return false;
  char prev = '\0';
  for (char c : word) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
    if (!ok || (c == '-' && prev == '-')) return false;
    prev = c;
  }
  return true;
}

/// Registry of concept and verb words. Built once, then read-only.
class Lexicon {
 public:
  void register_concept(const std::string& word, const std::set<std::string>& implies = {},
                        const std::set<std::string>& excludes = {}) {
    check_word(word);
    if (verbs_.count(word)) throw Error(ErrorCode::duplicate_word, "'" + word + "' is already a verb");
    if (declared_.count(word)) throw Error(ErrorCode::duplicate_word, "duplicate concept '" + word + "'");
    if (excludes.count(word))
      throw Error(ErrorCode::invalid_word, "concept '" + word + "' cannot exclude itself");
    for (const auto& w : implies) {
      if (excludes.count(w))
        throw Error(ErrorCode::invalid_word, "concept '" + word + "' both implies and excludes '" + w + "'");
    }
    for (const auto& w : implies) ensure_concept(w);
    for (const auto& w : excludes) ensure_concept(w);

    auto& entry = ensure_concept(word);
    declared_.insert(word);
    entry.implies.insert(implies.begin(), implies.end());
    for (const auto& w : excludes) {
      entry.excludes.insert(w);
      concepts_.at(w).excludes.insert(word);
    }
  }

  void register_verb(const std::string& word, VerbCategory category) {
    check_word(word);
    if (verbs_.count(word) || concepts_.count(word))
      throw Error(ErrorCode::duplicate_word, "duplicate word '" + word + "'");
    bool negated = word.rfind("not-", 0) == 0;
    verbs_.emplace(word, VerbEntry{word, category, negated});
  }

  void register_verb(const std::string& word, std::string_view category) {
    auto parsed = parse_verb_category(category);
    if (!parsed) throw Error(ErrorCode::unknown_category, "unknown verb category '" + std::string(category) + "'");
    register_verb(word, *parsed);
  }

  std::optional<LexiconEntry> lookup(std::string_view word) const {
    if (auto* c = find_concept(word)) return LexiconEntry{*c};
    if (auto v = find_verb(word)) return LexiconEntry{*v};
    return std::nullopt;
  }

  /// Like lookup(), but throws not-found.
  LexiconEntry at(std::string_view word) const {
    auto entry = lookup(word);
    if (!entry) throw Error(ErrorCode::not_found, "unknown word '" + std::string(word) + "'");
    return *entry;
  }

  const ConceptEntry* find_concept(std::string_view word) const {
    auto it = concepts_.find(word);
    return it == concepts_.end() ? nullptr : &it->second;
  }

  /// Negated forms (`not-<verb>`) are derived from the positive entry on demand.
  std::optional<VerbEntry> find_verb(std::string_view word) const {
    if (auto it = verbs_.find(word); it != verbs_.end()) return it->second;
    if (word.rfind("not-", 0) == 0) {
      if (auto it = verbs_.find(word.substr(4)); it != verbs_.end() && !it->second.negated)
        return VerbEntry{std::string(word), it->second.category, true};
    }
    return std::nullopt;
  }

  bool is_concept(std::string_view word) const { return find_concept(word) != nullptr; }
  bool is_verb(std::string_view word) const { return find_verb(word).has_value(); }

  bool excludes(std::string_view a, std::string_view b) const {
    auto* entry = find_concept(a);
    return entry && entry->excludes.count(std::string(b)) > 0;
  }

  /// `words` followed by everything they imply, transitively, without duplicates.
  std::vector<std::string> implied_closure(const std::vector<std::string>& words) const {
    std::vector<std::string> out;
    std::vector<std::string> pending(words.rbegin(), words.rend());
    while (!pending.empty()) {
      std::string w = std::move(pending.back());
      pending.pop_back();
      if (std::find(out.begin(), out.end(), w) != out.end()) continue;
      out.push_back(w);
      if (auto* entry = find_concept(w)) {
        for (auto it = entry->implies.rbegin(); it != entry->implies.rend(); ++it) pending.push_back(*it);
      }
    }
    return out;
  }

  /// First pair (a, b) of `words` registered as mutually excluding.
  std::optional<std::pair<std::string, std::string>> first_conflict(const std::vector<std::string>& words) const {
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j)
        if (excludes(words[i], words[j])) return std::pair{words[i], words[j]};
    return std::nullopt;
  }

  const std::map<std::string, ConceptEntry, std::less<>>& concepts() const { return concepts_; }
  const std::map<std::string, VerbEntry, std::less<>>& verbs() const { return verbs_; }

  /// Every unordered excluding pair, each reported once with a < b.
  std::vector<std::pair<std::string, std::string>> exclusion_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [word, entry] : concepts_)
      for (const auto& other : entry.excludes)
        if (word < other) out.emplace_back(word, other);
    return out;
  }

  /// Parses the line-based lexicon format and registers every declaration.
  ///
  ///   concept <word> [implies <w>,<w>] [excludes <w>,<w>]
  ///   verb <word> category <category>
  ///   % comment
  void load(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto pct = line.find('%'); pct != std::string::npos) line.erase(pct);
      std::istringstream words(line);
      std::vector<std::string> tokens;
      for (std::string t; words >> t;) tokens.push_back(t);
      if (tokens.empty()) continue;
      try {
        load_declaration(tokens);
      } catch (const Error& e) {
        throw Error(e.code(), e.detail(), SourcePos{line_no, 1});
      }
    }
  }

  friend bool operator==(const Lexicon&, const Lexicon&) = default;

 private:
  static void check_word(const std::string& word) {
    if (is_reserved_word(word)) throw Error(ErrorCode::reserved_word, "'" + word + "' is a reserved word");
    if (!is_valid_word(word)) throw Error(ErrorCode::invalid_word, "invalid word '" + word + "'");
  }

  ConceptEntry& ensure_concept(const std::string& word) {
    check_word(word);
    if (verbs_.count(word)) throw Error(ErrorCode::invalid_word, "'" + word + "' is a verb, not a concept");
    auto it = concepts_.find(word);
    if (it == concepts_.end()) it = concepts_.emplace(word, ConceptEntry{word, {}, {}}).first;
    return it->second;
  }

  static std::set<std::string> split_list(const std::vector<std::string>& tokens, std::size_t begin,
                                          std::size_t end) {
    std::string joined;
    for (std::size_t i = begin; i < end; ++i) joined += tokens[i];
    std::set<std::string> out;
    std::size_t start = 0;
    while (start <= joined.size()) {
      auto comma = joined.find(',', start);
      auto item = joined.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (item.empty()) throw Error(ErrorCode::lexicon_syntax, "empty item in word list");
      out.insert(item);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

  void load_declaration(const std::vector<std::string>& tokens) {
    if (tokens[0] == "verb") {
      if (tokens.size() != 4 || tokens[2] != "category")
        throw Error(ErrorCode::lexicon_syntax, "expected 'verb <word> category <category>'");
      register_verb(tokens[1], tokens[3]);
      return;
    }
    if (tokens[0] != "concept")
      throw Error(ErrorCode::lexicon_syntax, "expected 'concept' or 'verb', got '" + tokens[0] + "'");
    if (tokens.size() < 2) throw Error(ErrorCode::lexicon_syntax, "missing concept word");

    std::set<std::string> implies, excludes;
    bool seen_implies = false, seen_excludes = false;
    std::size_t i = 2;
    while (i < tokens.size()) {
      const auto& key = tokens[i];
      bool is_implies = key == "implies";
      if (!is_implies && key != "excludes")
        throw Error(ErrorCode::lexicon_syntax, "expected 'implies' or 'excludes', got '" + key + "'");
      bool& seen = is_implies ? seen_implies : seen_excludes;
      if (seen) throw Error(ErrorCode::lexicon_syntax, "repeated '" + key + "' clause");
      seen = true;
      std::size_t end = i + 1;
      while (end < tokens.size() && tokens[end] != "implies" && tokens[end] != "excludes") ++end;
      if (end == i + 1) throw Error(ErrorCode::lexicon_syntax, "empty '" + key + "' list");
      (is_implies ? implies : excludes) = split_list(tokens, i + 1, end);
      i = end;
    }
    register_concept(tokens[1], implies, excludes);
  }

  std::map<std::string, ConceptEntry, std::less<>> concepts_;
  std::map<std::string, VerbEntry, std::less<>> verbs_;
  std::set<std::string, std::less<>> declared_;
};

inline Lexicon load_lexicon(std::string_view text) {
  Lexicon lexicon;
  lexicon.load(text);
  return lexicon;
}

}  // namespace xapi
