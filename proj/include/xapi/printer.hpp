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

#include <string>

#include "xapi/syntax.hpp"

namespace xapi {

namespace detail {

inline std::string print_scene_name(const SceneRef& scene) {
  if (!scene.label) return "";
  return scene.by_name ? "\"" + *scene.label + "\"" : "#" + *scene.label;
}

inline std::string print_scene_ref(const SceneRef& scene, bool capitalize) {
  std::string out = capitalize ? "Scene" : "scene";
  if (scene.label) out += " " + print_scene_name(scene);
  return out;
}

inline std::string print_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace detail

/// Canonical text of a noun phrase. `capitalize` uppercases a leading article.
inline std::string print_reference(const ReferenceExpr& ref, bool capitalize = false) {
  if (ref.is_group()) {
    std::string out;
    for (std::size_t i = 0; i < ref.group_parts.size(); ++i) {
      if (i) out += " + ";
      out += print_reference(ref.group_parts[i], capitalize && i == 0);
    }
    return out;
  }
  if (ref.scene_ref) return detail::print_scene_ref(*ref.scene_ref, capitalize);
  if (ref.text_literal) return "text \"" + *ref.text_literal + "\"";
  if (ref.pronoun) return "I";

  std::string out;
  auto add = [&](const std::string& piece) {
    if (!out.empty()) out += ' ';
    out += piece;
  };
  if (ref.article == Article::indefinite) {
    bool vowel = false;
    if (!ref.attributes.empty()) vowel = std::string("aeiou").find(ref.attributes.front().front()) != std::string::npos;
    add(capitalize ? (vowel ? "An" : "A") : (vowel ? "an" : "a"));
  } else if (ref.article == Article::definite) {
    add(capitalize ? "The" : "the");
  }
  for (const auto& a : ref.attributes) add(a);
  if (ref.proper_name) add("\"" + *ref.proper_name + "\"");
  if (ref.relation_path) add("-- of -- " + print_reference(*ref.relation_path->target));
  if (ref.scene_qualifier) add("-- in -- " + detail::print_scene_name(*ref.scene_qualifier));
  return out;
}

namespace detail {

inline std::string print_macro(const MacroSpec& macro) {
  std::string out = std::string(to_string(macro.kind)) + " #" + macro.scene_label + ", " +
                    (macro.scene_relation ? *macro.scene_relation : std::string("none"));
  for (const auto& m : macro.members) {
    out += ", ";
    if (m.source) out += print_reference(*m.source) + " -> ";
    std::string member = print_words(m.attributes);
    if (m.proper_name) member += (member.empty() ? "" : " ") + ("\"" + *m.proper_name + "\"");
    out += member;
  }
  return out;
}

inline std::string print_body(const ParsedSentence& s) {
  if (s.form == SentenceForm::scene_macro) return print_macro(*s.macro);
  if (s.is_continuation()) return "$..// " + print_body(*s.quoted);

  std::string out = print_reference(s.subject, true) + " / ";
  if (s.thus) {
    out += "thus ";
    if (s.thus->label) out += "#" + *s.thus->label + " ";
  }
  if (s.in_summary) out += "in-summary ";
  out += s.verb;
  if (s.verb_label) out += " #" + *s.verb_label;
  if (s.quote_scene) out += " in " + print_scene_name(*s.quote_scene);
  switch (s.form) {
    case SentenceForm::quote: out += " // " + print_body(*s.quoted); break;
    case SentenceForm::svo: out += " / " + print_reference(*s.object); break;
    case SentenceForm::sv_adj: out += " / " + print_words(s.adjectives); break;
    default: break;
  }
  return out;
}

}  // namespace detail

/// Canonical Xapi text; parsing it again yields an equal tree.
inline std::string print_canonical(const ParsedSentence& sentence) {
  std::string out = detail::print_body(sentence);
  if (sentence.form != SentenceForm::scene_macro) out += '.';
  return out;
}

}  // namespace xapi
