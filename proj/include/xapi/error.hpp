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
#include <stdexcept>
#include <string>
#include <string_view>

namespace xapi {

/// 1-based line and column of a character in a source text.
struct SourcePos {
  int line = 1;
  int column = 1;

  friend auto operator<=>(const SourcePos&, const SourcePos&) = default;
};

enum class ErrorCode {
  // lexicon
  duplicate_word,
  reserved_word,
  invalid_word,
  unknown_category,
  lexicon_syntax,
  not_found,
  // tokenizer / parser
  unterminated_name,
  illegal_character,
  unknown_word,
  unknown_verb,
  malformed_reference,
  malformed_sentence,
  missing_period,
  malformed_macro,
  orphan_continuation,
  // executor
  no_match,
  no_relation,
  incompatible_attributes,
  no_anchor,
  unknown_label,
  duplicate_label,
  unknown_scene,
  duplicate_scene,
  no_counterpart,
  not_a_group,
  group_full,
  invalid_identity,
  invalid_change,
  unknown_id,
  // serialization / io
  bad_format,
  io,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::duplicate_word: return "duplicate-word";
    case ErrorCode::reserved_word: return "reserved-word";
    case ErrorCode::invalid_word: return "invalid-word";
    case ErrorCode::unknown_category: return "unknown-category";
    case ErrorCode::lexicon_syntax: return "lexicon-syntax";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::unterminated_name: return "unterminated-name";
    case ErrorCode::illegal_character: return "illegal-character";
    case ErrorCode::unknown_word: return "unknown-word";
    case ErrorCode::unknown_verb: return "unknown-verb";
    case ErrorCode::malformed_reference: return "malformed-reference";
    case ErrorCode::malformed_sentence: return "malformed-sentence";
    case ErrorCode::missing_period: return "missing-period";
    case ErrorCode::malformed_macro: return "malformed-macro";
    case ErrorCode::orphan_continuation: return "orphan-continuation";
    case ErrorCode::no_match: return "no-match";
    case ErrorCode::no_relation: return "no-relation";
    case ErrorCode::incompatible_attributes: return "incompatible-attributes";
    case ErrorCode::no_anchor: return "no-anchor";
    case ErrorCode::unknown_label: return "unknown-label";
    case ErrorCode::duplicate_label: return "duplicate-label";
    case ErrorCode::unknown_scene: return "unknown-scene";
    case ErrorCode::duplicate_scene: return "duplicate-scene";
    case ErrorCode::no_counterpart: return "no-counterpart";
    case ErrorCode::not_a_group: return "not-a-group";
    case ErrorCode::group_full: return "group-full";
    case ErrorCode::invalid_identity: return "invalid-identity";
    case ErrorCode::invalid_change: return "invalid-change";
    case ErrorCode::unknown_id: return "unknown-id";
    case ErrorCode::bad_format: return "bad-format";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

/// The single exception type thrown by the library. Carries a machine-checkable
/// code and, when known, the source position the problem was detected at.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<SourcePos> pos = std::nullopt)
      : std::runtime_error(format(message, pos)), code_(code), pos_(pos), detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<SourcePos>& pos() const noexcept { return pos_; }
  /// Message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(const std::string& message, const std::optional<SourcePos>& pos) {
    if (!pos) return message;
    return std::to_string(pos->line) + ":" + std::to_string(pos->column) + ": " + message;
  }

  ErrorCode code_;
  std::optional<SourcePos> pos_;
  std::string detail_;
};

}  // namespace xapi
