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

// Recursive descent parser for Xapi sentences and scene macros.
//
//   sentence   := reference '/' verbphrase ( '//' sentence | '/' complement )? '.'
//   verbphrase := ['thus' [label]] ['in-summary'] verb [label] ['in' sceneref]
//   reference  := part ('+' part)*
//   part       := 'scene' [label | name] | text-literal | pronoun
//               | [article] concept* [name] ['--' ('of' part | 'in' sceneref) '--']
//   macro      := '$NewScene'|'$NewSceneCurrent'|'$NewSceneOnly' label ',' relation (',' member)*
//   member     := [part '->'] concept* [name]
//
// A macro runs to the end of its line; a trailing comma continues it on the
// next line.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xapi/error.hpp"
#include "xapi/lexer.hpp"
#include "xapi/lexicon.hpp"
#include "xapi/syntax.hpp"

namespace xapi {

namespace detail {

inline bool is_capitalized(std::string_view w) { return !w.empty() && w.front() >= 'A' && w.front() <= 'Z'; }
inline bool is_pronoun_word(std::string_view w) { return w == "I" || w == "Me"; }
inline bool is_article_word(std::string_view w) { return w == "a" || w == "an" || w == "the"; }

class SentenceParser {
 public:
  SentenceParser(std::span<const Token> tokens, const Lexicon& lexicon) : tokens_(tokens), lexicon_(lexicon) {}

  ParsedSentence sentence() {
    ParsedSentence s = body(true);
    expect(TokenKind::period, ErrorCode::missing_period, "expected '.' at end of sentence");
    if (!at_end()) fail(ErrorCode::malformed_sentence, "unexpected " + describe(peek()) + " after '.'");
    return s;
  }

  ParsedSentence macro() {
    const Token& head = next();
    ParsedSentence s;
    s.form = SentenceForm::scene_macro;
    s.pos = head.pos;
    MacroSpec spec;
    if (head.text == "$NewSceneOnly") {
      spec.kind = MacroKind::new_scene_only;
    } else if (head.text == "$NewSceneCurrent") {
      spec.kind = MacroKind::new_scene_current;
    } else if (head.text == "$NewScene") {
      spec.kind = MacroKind::new_scene;
    } else {
      throw Error(ErrorCode::malformed_macro, "unknown macro '" + head.text + "'", head.pos);
    }
    spec.scene_label = expect(TokenKind::label, ErrorCode::malformed_macro, "expected a #label after " + head.text).text;
    expect(TokenKind::comma, ErrorCode::malformed_macro, "expected ',' after the scene label");
    const Token& relation = expect(TokenKind::word, ErrorCode::malformed_macro, "expected a scene relation or 'none'");
    if (relation.text != "none") {
      auto verb = lexicon_.find_verb(relation.text);
      if (!verb || verb->category != VerbCategory::meta_scene)
        throw Error(ErrorCode::malformed_macro, "'" + relation.text + "' is not a scene relation verb", relation.pos);
      spec.scene_relation = relation.text;
    }
    while (accept(TokenKind::comma)) {
      if (at_end()) break;  // tolerate a trailing comma
      spec.members.push_back(macro_member());
    }
    if (!at_end()) fail(ErrorCode::malformed_macro, "unexpected " + describe(peek()) + " in macro");
    s.macro = std::move(spec);
    return s;
  }

 private:
  // --- token plumbing ------------------------------------------------------

  bool at_end() const { return i_ >= tokens_.size(); }
  const Token* peek_ptr(std::size_t ahead = 0) const {
    return i_ + ahead < tokens_.size() ? &tokens_[i_ + ahead] : nullptr;
  }
  const Token& peek() const { return tokens_[i_]; }
  bool check(TokenKind kind, std::size_t ahead = 0) const {
    auto* t = peek_ptr(ahead);
    return t && t->kind == kind;
  }
  bool check_word(std::string_view text, std::size_t ahead = 0) const {
    auto* t = peek_ptr(ahead);
    return t && t->kind == TokenKind::word && t->text == text;
  }
  const Token& next() { return tokens_[i_++]; }
  bool accept(TokenKind kind) {
    if (!check(kind)) return false;
    ++i_;
    return true;
  }
  SourcePos here() const {
    if (!at_end()) return peek().pos;
    if (tokens_.empty()) return {};
    auto p = tokens_.back().pos;
    p.column += static_cast<int>(tokens_.back().text.size());
    return p;
  }
  [[noreturn]] void fail(ErrorCode code, const std::string& message) const { throw Error(code, message, here()); }
  const Token& expect(TokenKind kind, ErrorCode code, const std::string& message) {
    if (!check(kind)) fail(code, message + (at_end() ? "" : ", found " + describe(peek())));
    return next();
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::word: return "'" + t.text + "'";
      case TokenKind::proper_name: return "\"" + t.text + "\"";
      case TokenKind::label: return "#" + t.text;
      case TokenKind::macro_head: return t.text;
      default: return std::string(to_string(t.kind));
    }
  }

  // --- sentences -----------------------------------------------------------

  ParsedSentence body(bool top) {
    ParsedSentence s;
    s.pos = here();
    if (check(TokenKind::macro_head)) {
      const Token& head = next();
      if (!top || head.text != "$..")
        throw Error(ErrorCode::malformed_sentence, "macro " + head.text + " must stand on its own line", head.pos);
      expect(TokenKind::double_slash, ErrorCode::malformed_sentence, "expected '//' after '$..'");
      s.form = SentenceForm::quote;
      s.macro = MacroSpec{MacroKind::quote_continuation, {}, std::nullopt, {}};
      s.quoted = body(false);
      return s;
    }

    s.subject = reference();
    expect(TokenKind::slash, ErrorCode::malformed_sentence, "expected '/' after the subject");

    if (check_word("thus")) {
      next();
      ThusMarker marker;
      if (check(TokenKind::label)) marker.label = next().text;
      s.thus = marker;
    }
    if (check_word("in-summary")) {
      next();
      s.in_summary = true;
    }
    const Token& verb_token = expect(TokenKind::word, ErrorCode::malformed_sentence, "expected a verb");
    auto verb = lexicon_.find_verb(verb_token.text);
    if (!verb) {
      std::string why = lexicon_.is_concept(verb_token.text) ? "' is a concept, not a verb" : "' is not a known verb";
      throw Error(ErrorCode::unknown_verb, "'" + verb_token.text + why, verb_token.pos);
    }
    s.verb = verb_token.text;
    if (check(TokenKind::label)) s.verb_label = next().text;
    if (check_word("in")) {
      next();
      s.quote_scene = scene_name();
    }

    if (accept(TokenKind::double_slash)) {
      if (verb->category != VerbCategory::quote)
        throw Error(ErrorCode::malformed_sentence, "'" + s.verb + "' does not take a quote", verb_token.pos);
      if (!s.quote_scene)
        throw Error(ErrorCode::malformed_sentence, "quote needs a scene: '" + s.verb + " in #Scene //'", verb_token.pos);
      s.form = SentenceForm::quote;
      s.quoted = body(false);
      return s;
    }
    if (verb->category == VerbCategory::quote)
      throw Error(ErrorCode::malformed_sentence, "quote verb '" + s.verb + "' requires '//' and a quoted sentence",
                  verb_token.pos);
    if (s.quote_scene)
      throw Error(ErrorCode::malformed_sentence, "only quote verbs take 'in <scene>'", verb_token.pos);

    if (accept(TokenKind::slash)) {
      complement(s, *verb);
    } else {
      s.form = SentenceForm::sv;
    }
    check_shape(s, *verb, verb_token.pos);
    return s;
  }

  void complement(ParsedSentence& s, const VerbEntry& verb) {
    bool adjectives = verb.category == VerbCategory::attribute ||
                      (verb.category == VerbCategory::change && bare_concepts_follow());
    if (adjectives) {
      s.form = SentenceForm::sv_adj;
      while (check(TokenKind::word)) {
        const Token& t = next();
        if (!lexicon_.is_concept(t.text))
          throw Error(ErrorCode::unknown_word, "'" + t.text + "' is not a known concept", t.pos);
        s.adjectives.push_back(t.text);
      }
      if (s.adjectives.empty()) fail(ErrorCode::malformed_sentence, "'" + s.verb + "' requires at least one adjective");
      return;
    }
    s.form = SentenceForm::svo;
    s.object = reference();
  }

  // True when everything up to the end of the sentence is plain concept words.
  bool bare_concepts_follow() const {
    std::size_t k = i_;
    bool any = false;
    for (; k < tokens_.size() && tokens_[k].kind != TokenKind::period; ++k) {
      const auto& t = tokens_[k];
      if (t.kind != TokenKind::word || is_article_word(t.text) || !lexicon_.is_concept(t.text)) return false;
      any = true;
    }
    return any;
  }

  void check_shape(const ParsedSentence& s, const VerbEntry& verb, SourcePos pos) const {
    auto require = [&](bool ok, const std::string& what) {
      if (!ok) throw Error(ErrorCode::malformed_sentence, "'" + s.verb + "' " + what, pos);
    };
    const bool sv = s.form == SentenceForm::sv;
    const bool svo = s.form == SentenceForm::svo;
    const bool scene_subject = s.subject.is_scene_ref();
    const bool text_object = svo && s.object->is_text();
    const bool scene_object = svo && s.object->is_scene_ref();
    switch (verb.category) {
      case VerbCategory::attribute:
        require(s.form == SentenceForm::sv_adj, "requires at least one adjective");
        break;
      case VerbCategory::exists:
        require(sv, "takes no object");
        break;
      case VerbCategory::utter:
        require(text_object, "requires a text literal object: text \"...\"");
        break;
      case VerbCategory::meta_scene:
        require(scene_subject, "needs a scene subject: Scene #Label / ...");
        if (verb.base_word() == "is-current-scene") {
          require(sv, "takes no object");
        } else {
          require(scene_object, "needs a scene object: ... / scene #Label");
        }
        break;
      case VerbCategory::relation:
      case VerbCategory::relation_terminating:
      case VerbCategory::identity:
      case VerbCategory::membership:
      case VerbCategory::uses:
        require(svo, "requires an object");
        break;
      case VerbCategory::change:
        require(!sv, "requires adjectives or a new instance");
        break;
      default:
        break;
    }
    if (verb.category != VerbCategory::meta_scene) {
      require(!scene_subject, "cannot take a scene as subject");
      require(!scene_object, "cannot take a scene as object");
    }
    if (verb.category != VerbCategory::utter) require(!text_object, "cannot take a text literal");
    require(!s.subject.is_text(), "cannot take a text literal as subject");
  }

  // --- references ----------------------------------------------------------

  ReferenceExpr reference() {
    SourcePos start = here();
    ReferenceExpr first = part();
    if (!check(TokenKind::plus)) return first;
    ReferenceExpr group;
    group.group_parts.push_back(std::move(first));
    while (accept(TokenKind::plus)) group.group_parts.push_back(part());
    for (const auto& p : group.group_parts) {
      if (p.is_scene_ref() || p.is_text() || p.pronoun)
        throw Error(ErrorCode::malformed_reference, "group members must be ordinary references", start);
    }
    return group;
  }

  ReferenceExpr part() {
    ReferenceExpr ref;
    SourcePos start = here();
    if (check(TokenKind::scene_keyword)) {
      next();
      SceneRef scene;
      if (check(TokenKind::label)) {
        scene.label = next().text;
      } else if (check(TokenKind::proper_name)) {
        scene.label = next().text;
        scene.by_name = true;
      }
      ref.scene_ref = scene;
      return ref;
    }
    if (check(TokenKind::text_literal)) {
      ref.text_literal = next().text;
      return ref;
    }
    if (check(TokenKind::word) && is_pronoun_word(peek().text)) {
      next();
      ref.pronoun = true;
      return ref;
    }
    if (check(TokenKind::word) && is_article_word(peek().text)) {
      ref.article = next().text == "the" ? Article::definite : Article::indefinite;
    }
    while (check(TokenKind::word)) {
      const Token& t = peek();
      if (is_capitalized(t.text) && !is_pronoun_word(t.text)) {
        next();
        ref.proper_name = t.text;
        break;
      }
      if (lexicon_.is_concept(t.text)) {
        next();
        ref.attributes.push_back(t.text);
        continue;
      }
      if (lexicon_.is_verb(t.text) || is_reserved_word(t.text)) break;
      throw Error(ErrorCode::unknown_word, "'" + t.text + "' is not a known concept", t.pos);
    }
    if (!ref.proper_name && check(TokenKind::proper_name)) ref.proper_name = next().text;
    if (ref.proper_name && ref.proper_name->empty())
      throw Error(ErrorCode::malformed_reference, "empty proper name", start);
    if (ref.attributes.empty() && !ref.proper_name) {
      if (at_end()) throw Error(ErrorCode::malformed_reference, "expected a reference", start);
      throw Error(ErrorCode::malformed_reference, "expected a reference, found " + describe(peek()), peek().pos);
    }

    if (accept(TokenKind::dash_dash)) {
      const Token& word = expect(TokenKind::word, ErrorCode::malformed_reference, "expected 'of' or 'in' after '--'");
      if (word.text != "of" && word.text != "in")
        throw Error(ErrorCode::malformed_reference, "path word must be 'of' or 'in', not '" + word.text + "'",
                    word.pos);
      expect(TokenKind::dash_dash, ErrorCode::malformed_reference, "expected '--' after '" + word.text + "'");
      if (word.text == "of") {
        ReferenceExpr target = part();
        if (target.is_scene_ref() || target.is_text())
          throw Error(ErrorCode::malformed_reference, "'-- of --' needs an instance reference", word.pos);
        ref.relation_path = RelationPath{"of", std::move(target)};
      } else {
        ref.scene_qualifier = scene_name();
      }
    }
    return ref;
  }

  // After `in` / `-- in --`: `#L`, `"name"`, `scene #L`, `scene "name"`.
  SceneRef scene_name() {
    accept(TokenKind::scene_keyword);
    SceneRef scene;
    if (check(TokenKind::label)) {
      scene.label = next().text;
    } else if (check(TokenKind::proper_name)) {
      scene.label = next().text;
      scene.by_name = true;
    } else {
      fail(ErrorCode::malformed_reference, "expected a scene label");
    }
    return scene;
  }

  MacroMember macro_member() {
    MacroMember member;
    SourcePos start = here();
    ReferenceExpr first = part();
    if (accept(TokenKind::arrow)) {
      member.source = std::move(first);
      ReferenceExpr target = part();
      first = std::move(target);
    }
    if (first.article != Article::none || first.relation_path || first.scene_qualifier || first.is_scene_ref() ||
        first.is_text() || first.pronoun)
      throw Error(ErrorCode::malformed_macro, "macro members are concept words and an optional name", start);
    member.attributes = std::move(first.attributes);
    member.proper_name = std::move(first.proper_name);
    return member;
  }

  std::span<const Token> tokens_;
  const Lexicon& lexicon_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Parses exactly one sentence (ending in '.') or one macro line.
inline ParsedSentence parse_sentence(std::span<const Token> tokens, const Lexicon& lexicon) {
  detail::SentenceParser parser(tokens, lexicon);
  if (!tokens.empty() && tokens.front().kind == TokenKind::macro_head && tokens.front().text != "$..")
    return parser.macro();
  return parser.sentence();
}

inline ParsedSentence parse_sentence(std::string_view text, const Lexicon& lexicon) {
  return parse_sentence(tokenize(text), lexicon);
}

struct ParsedStory {
  std::vector<ParsedSentence> sentences;
  std::vector<Error> errors;  // only filled when recovering
};

/// Splits a token stream into sentences and macro lines and parses each.
/// Keeps the preceding sentence so that `$..` lines can be expanded across
/// calls (the REPL feeds one chunk at a time).
class StoryParser {
 public:
  explicit StoryParser(const Lexicon& lexicon) : lexicon_(lexicon) {}

  /// Throws on the first error.
  std::vector<ParsedSentence> parse(std::string_view text) { return run(text, false).sentences; }

  /// Skips a malformed sentence, records the error and continues.
  ParsedStory parse_recovering(std::string_view text) { return run(text, true); }

  void reset() { previous_.reset(); }

 private:
  ParsedStory run(std::string_view text, bool recover) {
    ParsedStory story;
    std::vector<Token> tokens = tokenize(text);
    std::size_t i = 0;
    while (i < tokens.size()) {
      std::size_t begin = i;
      bool is_macro = tokens[i].kind == TokenKind::macro_head && tokens[i].text != "$..";
      bool terminated = true;
      if (is_macro) {
        i = macro_end(tokens, i);
      } else {
        while (i < tokens.size() && tokens[i].kind != TokenKind::period &&
               !(i > begin && tokens[i].kind == TokenKind::macro_head && tokens[i].text != "$.."))
          ++i;
        terminated = i < tokens.size() && tokens[i].kind == TokenKind::period;
        if (terminated) ++i;
      }
      std::span<const Token> chunk(tokens.data() + begin, i - begin);
      try {
        if (!terminated) {
          const Token& last = chunk.back();
          SourcePos p = last.pos;
          p.column += static_cast<int>(last.text.size());
          throw Error(ErrorCode::missing_period, "expected '.' at end of sentence", p);
        }
        ParsedSentence s = parse_sentence(chunk, lexicon_);
        if (s.is_continuation()) s = expand(std::move(s));
        previous_ = s;
        story.sentences.push_back(std::move(s));
      } catch (const Error& e) {
        if (!recover) throw;
        story.errors.push_back(e);
        previous_.reset();
      }
    }
    return story;
  }

  // A trailing comma continues a macro on the next line unless that line
  // opens another macro.
  static std::size_t macro_end(const std::vector<Token>& tokens, std::size_t i) {
    int line = tokens[i].pos.line;
    ++i;
    while (i < tokens.size()) {
      if (tokens[i].pos.line != line) {
        if (tokens[i - 1].kind != TokenKind::comma || tokens[i].kind == TokenKind::macro_head) break;
        line = tokens[i].pos.line;
      }
      ++i;
    }
    return i;
  }

  // `$..// inner.` reuses subject, verb and scene of the previous quote.
  ParsedSentence expand(ParsedSentence continuation) const {
    if (!previous_ || previous_->form != SentenceForm::quote)
      throw Error(ErrorCode::orphan_continuation, "'$..' without a preceding quote sentence", continuation.pos);
    ParsedSentence s;
    s.form = SentenceForm::quote;
    s.subject = previous_->subject;
    s.verb = previous_->verb;
    s.in_summary = previous_->in_summary;
    s.quote_scene = previous_->quote_scene;
    s.quoted = std::move(continuation.quoted);
    s.pos = continuation.pos;
    return s;
  }

  const Lexicon& lexicon_;
  std::optional<ParsedSentence> previous_;
};

inline std::vector<ParsedSentence> parse_story(std::string_view text, const Lexicon& lexicon) {
  return StoryParser(lexicon).parse(text);
}

}  // namespace xapi
