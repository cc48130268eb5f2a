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
#include <string_view>
#include <vector>

#include "xapi/error.hpp"

namespace xapi {

enum class TokenKind {
  word,
  proper_name,    // "Achilles" (text excludes the quotes)
  slash,          // /
  double_slash,   // //
  dash_dash,      // --
  plus,           // +
  label,          // #A (text excludes the '#')
  period,
  comma,
  arrow,          // ->
  macro_head,     // $NewScene, $..
  text_literal,   // text "Ave!" (text is the quoted payload)
  scene_keyword,  // scene / Scene
};

inline std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::word: return "word";
    case TokenKind::proper_name: return "proper-name";
    case TokenKind::slash: return "'/'";
    case TokenKind::double_slash: return "'//'";
    case TokenKind::dash_dash: return "'--'";
    case TokenKind::plus: return "'+'";
    case TokenKind::label: return "label";
    case TokenKind::period: return "'.'";
    case TokenKind::comma: return "','";
    case TokenKind::arrow: return "'->'";
    case TokenKind::macro_head: return "macro";
    case TokenKind::text_literal: return "text literal";
    case TokenKind::scene_keyword: return "'scene'";
  }
  return "?";
}

struct Token {
  TokenKind kind;
  std::string text;
  SourcePos pos;

  friend bool operator==(const Token&, const Token&) = default;
};

namespace detail {

inline bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_alnum(char c) { return is_alpha(c) || is_digit(c) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '\n') {
        advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        advance();
        continue;
      }
      if (c == '%') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
        continue;
      }
      SourcePos start = pos_;
      if (c == '"') {
        out.push_back({TokenKind::proper_name, quoted(start), start});
      } else if (c == '/') {
        advance();
        if (peek() == '/') {
          advance();
          out.push_back({TokenKind::double_slash, "//", start});
        } else {
          out.push_back({TokenKind::slash, "/", start});
        }
      } else if (c == '-') {
        advance();
        if (peek() == '-') {
          advance();
          out.push_back({TokenKind::dash_dash, "--", start});
        } else if (peek() == '>') {
          advance();
          out.push_back({TokenKind::arrow, "->", start});
        } else {
          throw Error(ErrorCode::illegal_character, "stray '-'", start);
        }
      } else if (c == '+') {
        advance();
        out.push_back({TokenKind::plus, "+", start});
      } else if (c == '.') {
        advance();
        out.push_back({TokenKind::period, ".", start});
      } else if (c == ',') {
        advance();
        out.push_back({TokenKind::comma, ",", start});
      } else if (c == '#') {
        advance();
        std::string name = identifier();
        if (name.empty()) throw Error(ErrorCode::illegal_character, "'#' must be followed by a label name", start);
        out.push_back({TokenKind::label, std::move(name), start});
      } else if (c == '$') {
        advance();
        if (peek() == '.' && peek(1) == '.') {
          advance();
          advance();
          out.push_back({TokenKind::macro_head, "$..", start});
        } else {
          std::string name = identifier();
          if (name.empty()) throw Error(ErrorCode::illegal_character, "'$' must start a macro name", start);
          out.push_back({TokenKind::macro_head, "$" + name, start});
        }
      } else if (is_alnum(c)) {
        out.push_back(word(start));
      } else {
        throw Error(ErrorCode::illegal_character, std::string("illegal character '") + c + "'", start);
      }
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < text_.size() ? text_[i_ + ahead] : '\0';
  }

  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  // Letters, digits and underscores; a hyphen only when another word
  // character follows (so `apple->` lexes as `apple` `->`).
  std::string identifier() {
    std::string out;
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (is_alnum(c) || (c == '-' && !out.empty() && is_alnum(peek(1)))) {
        out.push_back(c);
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  std::string quoted(SourcePos start) {
    advance();
    std::string out;
    while (true) {
      if (i_ >= text_.size() || text_[i_] == '\n')
        throw Error(ErrorCode::unterminated_name, "unterminated quoted name", start);
      if (text_[i_] == '"') {
        advance();
        return out;
      }
      out.push_back(text_[i_]);
      advance();
    }
  }

  Token word(SourcePos start) {
    std::string w = identifier();
    if (w == "A" || w == "An" || w == "The") {
      w[0] = static_cast<char>(w[0] - 'A' + 'a');
    }
    if (w == "scene" || w == "Scene") return {TokenKind::scene_keyword, "scene", start};
    if (w == "text") {
      std::size_t look = i_;
      while (look < text_.size() && (text_[look] == ' ' || text_[look] == '\t')) ++look;
      if (look < text_.size() && text_[look] == '"') {
        while (i_ < look) advance();
        return {TokenKind::text_literal, quoted(pos_), start};
      }
    }
    return {TokenKind::word, std::move(w), start};
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

}  // namespace detail

/// Splits Xapi text into tokens. `%` comments are dropped; capitalized
/// articles (`A`, `An`, `The`) are lowered wherever they appear.
inline std::vector<Token> tokenize(std::string_view text) { return detail::Lexer(text).run(); }

}  // namespace xapi
