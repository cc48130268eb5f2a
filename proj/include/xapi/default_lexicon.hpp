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

#include <string_view>

#include "xapi/lexicon.hpp"

namespace xapi {

/// Embedded copy of lexicon/default.lex (a unit test keeps the two in sync).
inline constexpr std::string_view kDefaultLexiconText = R"xlex(% Copyright 2026 The Xapi Authors. All Rights Reserved.
%
% Licensed under the Apache License, Version 2.0 (the "License");
% you may not use this file except in compliance with the License.
% You may obtain a copy of the License at
%
%     http://www.apache.org/licenses/LICENSE-2.0
%
% Unless required by applicable law or agreed to in writing, software
% distributed under the License is distributed on an "AS IS" BASIS,
% WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
% See the License for the specific language governing permissions and
% limitations under the License.

% Default Xapi lexicon: every word used by the stories in corpus/.
% concept <word> [implies <w>,<w>] [excludes <w>,<w>]
% verb <word> category <category>

% --- concepts -------------------------------------------------------------
concept trojan
concept greek
concept warrior
concept shield
concept sword
concept big
concept apple
concept man
concept woman
concept cat
concept box
concept head
concept horse
concept pencil
concept red
concept blue
concept kitchen
concept fridge
concept milk
concept hungry
concept empty
concept alive
concept dead excludes alive
concept existent
concept inexistent excludes existent
concept turk
concept beduin
concept dust
concept speck
concept mirage
concept black-dressed
concept pair
concept many
concept plan

% --- verbs ----------------------------------------------------------------
verb exists category exists
verb is-a category attribute
verb changes category change
verb is-identical category identity

verb owns category relation
verb has category relation
verb contains category relation
verb is-inside category relation
verb is-far-away category relation
verb is-approaching category relation

verb becomes-right-of category membership
verb becomes-left-of category membership

verb hits category action
verb gives category action
verb receives category action
verb cuts category action
verb meets category action
verb greets category action
verb laughs category action
verb talks-to category action
verb jokes category action
verb goes-to category action
verb open category action
verb pick-up category action
verb picks category action
verb drink category action

verb uses category uses
verb achieves category achieves
verb utters category utter
verb meet-and-greet-each-other category summary

verb sees category quote
verb thinks category quote
verb plans category quote
verb tries category quote
verb believes category quote

verb is-current-scene category meta-scene
verb clone-scene category meta-scene
verb is-past-of category meta-scene
verb is-yesterday-of category meta-scene
verb fictional-future category meta-scene
)xlex";

inline Lexicon default_lexicon() { return load_lexicon(kDefaultLexiconText); }

}  // namespace xapi
