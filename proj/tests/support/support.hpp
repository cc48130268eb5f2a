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

// Shared by the unit and acceptance suites: story helpers, random generators
// and reference computations that do not go through the library's own graph
// queries.

#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "xapi/cli.hpp"
#include "xapi/xapi.hpp"

namespace xapi::testing {

inline const Lexicon& lexicon() {
  static const Lexicon lex = default_lexicon();
  return lex;
}

inline StoryState run(std::string_view text, ExecutorOptions options = {}) {
  return cli::run_story_text(text, lexicon(), options);
}

inline std::filesystem::path corpus_dir() { return XAPI_CORPUS_DIR; }

inline std::vector<std::string> corpus_names() {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir()))
    if (e.path().extension() == ".xapi") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

inline std::string corpus_text(const std::string& name) {
  return cli::read_file((corpus_dir() / (name + ".xapi")).string());
}

inline StoryState run_corpus(const std::string& name) { return run(corpus_text(name)); }

// --- lookups ----------------------------------------------------------------

inline std::vector<const VerbInstance*> vis_with_verb(const StoryState& s, std::string_view verb) {
  std::vector<const VerbInstance*> out;
  for (const auto& vi : s.vis())
    if (vi.verb == verb) out.push_back(&vi);
  return out;
}

inline std::vector<const Instance*> instances_named(const StoryState& s, std::string_view name) {
  std::vector<const Instance*> out;
  for (const auto& i : s.instances())
    if (i.proper_name && *i.proper_name == name) out.push_back(&i);
  return out;
}

inline std::vector<const Instance*> instances_with(const StoryState& s, std::string_view attribute) {
  std::vector<const Instance*> out;
  for (const auto& i : s.instances())
    if (i.has(attribute)) out.push_back(&i);
  return out;
}

inline std::string scene_label(const StoryState& s, SceneId id) { return s.scene(id).label.value_or(""); }

// --- reference computations -------------------------------------------------

/// Union-find over raw edge lists; independent of identity_chain and
/// coincidence_group.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  /// Components of size >= min_size, each sorted, ordered by smallest element.
  std::vector<std::vector<std::uint32_t>> components(std::size_t min_size) {
    std::map<std::size_t, std::vector<std::uint32_t>> by_root;
    for (std::size_t x = 0; x < parent_.size(); ++x) by_root[find(x)].push_back(static_cast<std::uint32_t>(x));
    std::vector<std::vector<std::uint32_t>> out;
    for (auto& [root, members] : by_root)
      if (members.size() >= min_size) out.push_back(members);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
};

inline std::vector<std::vector<std::uint32_t>> oracle_identity_chains(const StoryState& s) {
  DisjointSets sets(s.instances().size());
  for (const auto& e : s.identity_edges()) sets.unite(e.a.value, e.b.value);
  return sets.components(2);
}

inline std::vector<std::vector<std::uint32_t>> oracle_coincidence_groups(const StoryState& s) {
  DisjointSets sets(s.vis().size());
  for (const auto& l : s.links())
    if (l.kind == LinkKind::coincidence) sets.unite(l.from.value, l.to.value);
  return sets.components(2);
}

template <typename Tag>
std::vector<std::uint32_t> raw(const std::vector<Id<Tag>>& ids) {
  std::vector<std::uint32_t> out;
  for (auto id : ids) out.push_back(id.value);
  return out;
}

/// Size of the coincidence component containing `vi`, by graph search over links.
inline std::size_t oracle_group_size(const StoryState& s, VerbInstanceId vi) {
  DisjointSets sets(s.vis().size());
  for (const auto& l : s.links())
    if (l.kind == LinkKind::coincidence) sets.unite(l.from.value, l.to.value);
  std::size_t root = sets.find(vi.value), n = 0;
  for (std::size_t k = 0; k < s.vis().size(); ++k) n += sets.find(k) == root;
  return n;
}

// --- random sentences ---------------------------------------------------------

/// Produces syntax trees that satisfy the parser's shape rules; their printed
/// form is therefore valid input.
class SentenceGenerator {
 public:
  explicit SentenceGenerator(std::uint32_t seed, const Lexicon& lex = lexicon()) : rng_(seed) {
    for (const auto& [word, entry] : lex.concepts()) concepts_.push_back(word);
    for (const auto& [word, entry] : lex.verbs()) verbs_[entry.category].push_back(word);
  }

  ParsedSentence sentence() {
    if (chance(8)) return macro();
    return body(true);
  }

 private:
  bool chance(int one_in) { return std::uniform_int_distribution<int>(0, one_in - 1)(rng_) == 0; }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[pick(v.size())]; }

  std::string name() { return pick(names_); }
  std::string label() { return pick(labels_); }

  std::vector<std::string> some_concepts(std::size_t min, std::size_t max) {
    std::vector<std::string> out(min + pick(max - min + 1));
    for (auto& w : out) w = pick(concepts_);
    return out;
  }

  SceneRef scene_name() {
    SceneRef scene;
    scene.by_name = chance(2);
    scene.label = scene.by_name ? name() : label();
    return scene;
  }

  ReferenceExpr plain(bool allow_path) {
    ReferenceExpr ref;
    ref.article = static_cast<Article>(pick(3));
    bool named = chance(3);
    ref.attributes = some_concepts(named ? 0 : 1, 3);
    if (named) ref.proper_name = name();
    if (allow_path && chance(5)) {
      ReferenceExpr target = plain(false);
      ref.relation_path = RelationPath{"of", std::move(target)};
    } else if (allow_path && chance(6)) {
      ref.scene_qualifier = scene_name();
    }
    return ref;
  }

  ReferenceExpr reference() {
    if (chance(10)) {
      ReferenceExpr r;
      r.pronoun = true;
      return r;
    }
    if (chance(6)) {
      ReferenceExpr group;
      for (std::size_t k = 0, n = 2 + pick(2); k < n; ++k) group.group_parts.push_back(plain(true));
      return group;
    }
    return plain(true);
  }

  ReferenceExpr new_instance() {
    ReferenceExpr ref = plain(false);
    ref.article = Article::indefinite;
    return ref;
  }

  ParsedSentence body(bool top) {
    static const std::vector<VerbCategory> kinds = {
        VerbCategory::action,   VerbCategory::relation, VerbCategory::relation_terminating,
        VerbCategory::attribute, VerbCategory::change,  VerbCategory::identity,
        VerbCategory::exists,   VerbCategory::achieves, VerbCategory::uses,
        VerbCategory::utter,    VerbCategory::summary,  VerbCategory::membership,
        VerbCategory::quote,    VerbCategory::meta_scene};
    VerbCategory category = pick(kinds);
    if (!top && (category == VerbCategory::quote || category == VerbCategory::meta_scene))
      category = VerbCategory::action;
    if (category == VerbCategory::relation_terminating && verbs_[category].empty()) category = VerbCategory::relation;

    ParsedSentence s;
    s.verb = pick(verbs_[category]);
    if (category != VerbCategory::meta_scene) {
      if (chance(5)) s.thus = ThusMarker{chance(2) ? std::optional<std::string>(label()) : std::nullopt};
      if (chance(8)) s.in_summary = true;
      if (chance(6)) s.verb_label = label();
      if (chance(6)) s.verb = "not-" + s.verb;
    }

    switch (category) {
      case VerbCategory::meta_scene: {
        s.subject.scene_ref = chance(4) ? SceneRef{} : scene_name();
        if (s.verb == "is-current-scene") {
          s.form = SentenceForm::sv;
        } else {
          s.form = SentenceForm::svo;
          ReferenceExpr object;
          object.scene_ref = scene_name();
          s.object = std::move(object);
        }
        return s;
      }
      case VerbCategory::quote:
        s.subject = reference();
        s.form = SentenceForm::quote;
        s.quote_scene = scene_name();
        s.quoted = body(false);
        return s;
      case VerbCategory::attribute:
        s.subject = reference();
        s.form = SentenceForm::sv_adj;
        s.adjectives = some_concepts(1, 3);
        return s;
      case VerbCategory::change:
        s.subject = reference();
        if (chance(2)) {
          s.form = SentenceForm::sv_adj;
          s.adjectives = some_concepts(1, 2);
        } else {
          s.form = SentenceForm::svo;
          s.object = new_instance();
        }
        return s;
      case VerbCategory::exists:
        s.subject = reference();
        s.form = SentenceForm::sv;
        return s;
      case VerbCategory::utter: {
        s.subject = reference();
        s.form = SentenceForm::svo;
        ReferenceExpr object;
        object.text_literal = pick(texts_);
        s.object = std::move(object);
        return s;
      }
      case VerbCategory::action:
      case VerbCategory::achieves:
      case VerbCategory::summary:
        s.subject = reference();
        if (chance(2)) {
          s.form = SentenceForm::sv;
          return s;
        }
        [[fallthrough]];
      default:
        if (s.subject == ReferenceExpr{}) s.subject = reference();
        s.form = SentenceForm::svo;
        s.object = reference();
        return s;
    }
  }

  ParsedSentence macro() {
    ParsedSentence s;
    s.form = SentenceForm::scene_macro;
    MacroSpec spec;
    spec.kind = static_cast<MacroKind>(pick(3));
    spec.scene_label = label();
    if (chance(2)) spec.scene_relation = pick(verbs_[VerbCategory::meta_scene]);
    for (std::size_t k = 0, n = pick(4); k < n; ++k) {
      MacroMember m;
      bool named = chance(2);
      m.attributes = some_concepts(named ? 0 : 1, 2);
      if (named) m.proper_name = name();
      if (chance(3)) {
        ReferenceExpr src;
        src.attributes = some_concepts(1, 2);
        m.source = std::move(src);
      }
      spec.members.push_back(std::move(m));
    }
    s.macro = std::move(spec);
    return s;
  }

  std::mt19937 rng_;
  std::vector<std::string> concepts_;
  std::map<VerbCategory, std::vector<std::string>> verbs_;
  std::vector<std::string> names_ = {"Hector", "Achilles", "JayLeno", "Me", "plan", "Old Man", "x1"};
  std::vector<std::string> labels_ = {"A", "Reality", "Plan", "t2", "Attempt"};
  std::vector<std::string> texts_ = {"Ave!", "Salve!", "", "two words", "x / y."};
};

/// One randomized is-a / changes story over a few named instances.
struct AttributeStory {
  std::vector<std::string> names;
  std::vector<std::string> sentences;
};

inline AttributeStory random_attribute_story(std::uint32_t seed, std::size_t length) {
  std::mt19937 rng(seed);
  static const std::vector<std::string> pool = {"alive", "dead",  "existent", "inexistent", "red",
                                                "blue",  "big",   "hungry",   "empty",      "man",
                                                "woman", "greek", "trojan",   "warrior"};
  AttributeStory story;
  story.names = {"Hector", "Achilles", "Mary"};
  for (const auto& n : story.names) story.sentences.push_back("A \"" + n + "\" / exists.");
  for (std::size_t k = 0; k < length; ++k) {
    const auto& who = story.names[std::uniform_int_distribution<std::size_t>(0, story.names.size() - 1)(rng)];
    const auto& what = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    bool change = std::uniform_int_distribution<int>(0, 2)(rng) == 0;
    story.sentences.push_back("\"" + who + "\" / " + (change ? "changes" : "is-a") + " / " + what + ".");
  }
  return story;
}

}  // namespace xapi::testing
