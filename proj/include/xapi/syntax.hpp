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

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "xapi/error.hpp"
#include "xapi/indirect.hpp"

namespace xapi {

enum class Article { none, indefinite, definite };

/// `scene`, `scene #Label` or `scene "name"`. A missing label means the
/// current scene. Quoted names match labels case-insensitively.
struct SceneRef {
  std::optional<std::string> label;
  bool by_name = false;

  friend bool operator==(const SceneRef&, const SceneRef&) = default;
};

struct ReferenceExpr;

/// `X -- of -- Y`: X is something Y is in an active relation with.
struct RelationPath {
  std::string word;  // always "of"
  indirect<ReferenceExpr> target;

  friend bool operator==(const RelationPath&, const RelationPath&) = default;
};

/// One noun phrase.
struct ReferenceExpr {
  Article article = Article::none;
  std::vector<std::string> attributes;
  std::optional<std::string> proper_name;
  bool pronoun = false;  // I / Me inside a quote
  std::optional<RelationPath> relation_path;
  std::optional<SceneRef> scene_qualifier;  // X -- in -- "scene"
  std::vector<ReferenceExpr> group_parts;   // A + B (size >= 2)
  std::optional<SceneRef> scene_ref;        // the phrase names a scene
  std::optional<std::string> text_literal;  // text "Ave!"

  bool is_group() const { return !group_parts.empty(); }
  bool is_scene_ref() const { return scene_ref.has_value(); }
  bool is_text() const { return text_literal.has_value(); }

  friend bool operator==(const ReferenceExpr&, const ReferenceExpr&) = default;
};

enum class SentenceForm { sv, svo, sv_adj, quote, scene_macro };

inline std::string_view to_string(SentenceForm form) {
  switch (form) {
    case SentenceForm::sv: return "SV";
    case SentenceForm::svo: return "SVO";
    case SentenceForm::sv_adj: return "SVAdj";
    case SentenceForm::quote: return "Quote";
    case SentenceForm::scene_macro: return "SceneMacro";
  }
  return "?";
}

enum class MacroKind { new_scene_only, new_scene_current, new_scene, quote_continuation };

inline std::string_view to_string(MacroKind kind) {
  switch (kind) {
    case MacroKind::new_scene_only: return "$NewSceneOnly";
    case MacroKind::new_scene_current: return "$NewSceneCurrent";
    case MacroKind::new_scene: return "$NewScene";
    case MacroKind::quote_continuation: return "$..";
  }
  return "?";
}

/// `[source ->] attr... ["Name"]`
struct MacroMember {
  std::vector<std::string> attributes;
  std::optional<std::string> proper_name;
  std::optional<ReferenceExpr> source;

  friend bool operator==(const MacroMember&, const MacroMember&) = default;
};

struct MacroSpec {
  MacroKind kind = MacroKind::new_scene;
  std::string scene_label;
  std::optional<std::string> scene_relation;  // nullopt is `none`
  std::vector<MacroMember> members;

  friend bool operator==(const MacroSpec&, const MacroSpec&) = default;
};

/// `thus` or `thus #L`.
struct ThusMarker {
  std::optional<std::string> label;

  friend bool operator==(const ThusMarker&, const ThusMarker&) = default;
};

/// Syntax tree of one sentence or macro line.
///
/// The form decides which optional fields are set:
///   SV          subject, verb
///   SVO         subject, verb, object
///   SVAdj       subject, verb, adjectives
///   Quote       subject, verb, quote_scene, quoted
///   SceneMacro  macro only
/// A Quote carrying a `quote_continuation` macro is an unexpanded `$..` line;
/// parse_story() fills in the prefix from the preceding quote.
struct ParsedSentence {
  SentenceForm form = SentenceForm::sv;
  ReferenceExpr subject;
  std::string verb;
  std::optional<std::string> verb_label;
  std::optional<ThusMarker> thus;
  bool in_summary = false;
  std::optional<ReferenceExpr> object;
  std::vector<std::string> adjectives;
  std::optional<SceneRef> quote_scene;
  indirect<ParsedSentence> quoted;
  std::optional<MacroSpec> macro;
  SourcePos pos;  // not part of equality

  bool is_continuation() const { return macro && macro->kind == MacroKind::quote_continuation; }

  friend bool operator==(const ParsedSentence& a, const ParsedSentence& b) {
    return std::tie(a.form, a.subject, a.verb, a.verb_label, a.thus, a.in_summary, a.object, a.adjectives,
                    a.quote_scene, a.quoted, a.macro) ==
           std::tie(b.form, b.subject, b.verb, b.verb_label, b.thus, b.in_summary, b.object, b.adjectives,
                    b.quote_scene, b.quoted, b.macro);
  }
};

}  // namespace xapi
