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
#include <cctype>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "xapi/error.hpp"
#include "xapi/lexicon.hpp"
#include "xapi/model.hpp"
#include "xapi/printer.hpp"
#include "xapi/syntax.hpp"

namespace xapi {

/// Number-sense concepts that turn an instance into a group.
inline constexpr std::string_view kPairConcept = "pair";
inline constexpr std::string_view kManyConcept = "many";

struct ExecutorOptions {
  /// Action VIs kept in focus per scene (the W most recent).
  std::size_t focus_window = 10;
  /// Skip and record failing sentences instead of aborting.
  bool lenient = false;
};

struct ResolvedReference {
  std::string text;
  InstanceId id;

  friend bool operator==(const ResolvedReference&, const ResolvedReference&) = default;
};

/// What one sentence did to the state.
struct SentenceRecord {
  std::size_t index = 0;
  SourcePos pos;
  std::string text;
  std::vector<SceneId> created_scenes;
  std::vector<InstanceId> created_instances;
  std::vector<VerbInstanceId> created_vis;
  std::vector<IdentityEdge> created_identity_edges;
  std::vector<LinkEdge> created_links;
  std::vector<ResolvedReference> resolved;
  std::optional<std::string> error;  // lenient mode: the sentence was skipped
};

struct ExecutionTrace {
  std::vector<SentenceRecord> records;

  std::size_t error_count() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const auto& r) { return r.error.has_value(); }));
  }
};

/// Executes parsed sentences against a StoryState it does not own. Every
/// sentence is atomic: on error the state is restored before rethrowing.
class Executor {
 public:
  Executor(const Lexicon& lexicon, StoryState& state, ExecutorOptions options = {})
      : lexicon_(lexicon), state_(state), options_(options) {
    if (options_.focus_window == 0) throw std::invalid_argument("focus window must be at least 1");
  }

  const ExecutorOptions& options() const { return options_; }

  ExecutionTrace execute_story(std::span<const ParsedSentence> sentences) {
    ExecutionTrace trace;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      try {
        SentenceRecord record = execute(sentences[i]);
        record.index = i;
        trace.records.push_back(std::move(record));
      } catch (const Error& e) {
        auto pos = e.pos() ? e.pos() : std::optional<SourcePos>(sentences[i].pos);
        Error annotated(e.code(), "sentence " + std::to_string(i + 1) + ": " + e.detail(), pos);
        if (!options_.lenient) throw annotated;
        SentenceRecord record;
        record.index = i;
        record.pos = sentences[i].pos;
        record.text = print_canonical(sentences[i]);
        record.error = annotated.what();
        trace.records.push_back(std::move(record));
      }
    }
    return trace;
  }

  SentenceRecord execute(const ParsedSentence& sentence) {
    StoryState backup = state_;
    SentenceRecord record;
    record.pos = sentence.pos;
    record.text = print_canonical(sentence);
    const auto scenes = state_.scenes().size();
    const auto instances = state_.instances().size();
    const auto vis = state_.vis().size();
    const auto identities = state_.identity_edges().size();
    const auto links = state_.links().size();
    record_ = &record;
    try {
      dispatch(sentence);
    } catch (...) {
      record_ = nullptr;
      state_ = std::move(backup);
      throw;
    }
    record_ = nullptr;
    for (auto i = scenes; i < state_.scenes().size(); ++i) record.created_scenes.push_back(state_.scenes()[i].id);
    for (auto i = instances; i < state_.instances().size(); ++i)
      record.created_instances.push_back(state_.instances()[i].id);
    for (auto i = vis; i < state_.vis().size(); ++i) record.created_vis.push_back(state_.vis()[i].id);
    record.created_identity_edges.assign(state_.identity_edges().begin() + static_cast<std::ptrdiff_t>(identities),
                                         state_.identity_edges().end());
    record.created_links.assign(state_.links().begin() + static_cast<std::ptrdiff_t>(links), state_.links().end());
    return record;
  }

  // --- reference resolution -------------------------------------------------

  /// Indefinite articles create; definite (or bare) references pick the most
  /// recent in-focus instance of the scene whose attributes and name cover the
  /// reference. A bare proper name with no match introduces the named entity.
  InstanceId resolve_reference(const ReferenceExpr& ref, SceneId scene) {
    std::vector<InstanceId> taken;
    return resolve(ref, scene, std::nullopt, true, taken);
  }

  SceneId resolve_scene(const SceneRef& ref) {
    if (!ref.label) return ensure_scene();
    if (!ref.by_name) {
      if (auto id = state_.find_scene(*ref.label)) return *id;
    } else {
      for (const auto& s : state_.scenes())
        if (s.label && iequals(*s.label, *ref.label)) return s.id;
    }
    throw Error(ErrorCode::unknown_scene, "unknown scene " + detail::print_scene_name(ref));
  }

  // --- sentence kinds -------------------------------------------------------

  VerbInstanceId exec_is_a(const ParsedSentence& s, SceneId scene, std::optional<InstanceId> speaker = {}) {
    InstanceId subject = resolve_top(s.subject, scene, speaker);
    add_attributes(subject, s.adjectives);
    VerbInstance vi;
    vi.form = VerbForm::sv_adj;
    vi.subject = subject;
    vi.adjectives = s.adjectives;
    return emit(s, scene, std::move(vi));
  }

  /// Replaces the subject by a new, identity-linked instance and defocuses it.
  VerbInstanceId exec_change(const ParsedSentence& s, SceneId scene, std::optional<InstanceId> speaker = {}) {
    InstanceId old_id = resolve_top(s.subject, scene, speaker);
    VerbInstance vi;
    vi.subject = old_id;
    InstanceId new_id;
    if (s.form == SentenceForm::sv_adj) {
      auto added = lexicon_.implied_closure(s.adjectives);
      if (auto conflict = lexicon_.first_conflict(added))
        throw Error(ErrorCode::incompatible_attributes,
                    "'" + conflict->first + "' and '" + conflict->second + "' exclude each other");
      const Instance& old = state_.instance(old_id);
      std::vector<std::string> attributes;
      for (const auto& a : old.attributes) {
        bool dropped = std::any_of(added.begin(), added.end(), [&](const auto& w) { return lexicon_.excludes(w, a); });
        if (!dropped) attributes.push_back(a);
      }
      for (const auto& w : added)
        if (std::find(attributes.begin(), attributes.end(), w) == attributes.end()) attributes.push_back(w);
      auto name = old.proper_name;
      auto group_kind = old.group_kind;
      auto members = old.group_members;
      new_id = state_.add_instance(old.scene, std::move(attributes), std::move(name));
      state_.instance(new_id).group_kind = group_kind;
      state_.instance(new_id).group_members = std::move(members);
      vi.form = VerbForm::sv_adj;
      vi.adjectives = s.adjectives;
    } else {
      const auto before = state_.instances().size();
      new_id = resolve_top(*s.object, scene, speaker);
      if (new_id.value < before)
        throw Error(ErrorCode::invalid_change, "'changes' needs a new instance ('a ...') or adjectives, got '" +
                                                   print_reference(*s.object) + "'");
      Instance& fresh = state_.instance(new_id);
      const Instance& old = state_.instance(old_id);
      if (!fresh.proper_name && !fresh.is_group() && old.proper_name) fresh.proper_name = old.proper_name;
      vi.form = VerbForm::svo;
      vi.object = new_id;
    }
    state_.add_identity(old_id, new_id);
    defocus_instance(old_id);
    return emit(s, scene, std::move(vi));
  }

  VerbInstanceId exec_identity(const ParsedSentence& s, SceneId scene, std::optional<InstanceId> speaker = {}) {
    InstanceId a = resolve_top(s.subject, scene, speaker);
    InstanceId b = resolve_top(*s.object, scene, speaker);
    if (a == b) throw Error(ErrorCode::invalid_identity, "an instance cannot be identical to itself");
    if (state_.instance(a).scene == state_.instance(b).scene)
      throw Error(ErrorCode::invalid_identity,
                  "identity inside one scene is expressed with 'changes', not '" + s.verb + "'");
    state_.add_identity(a, b);
    VerbInstance vi;
    vi.form = VerbForm::svo;
    vi.subject = a;
    vi.object = b;
    return emit(s, scene, std::move(vi));
  }

  /// Relation VIs stay in focus until a relation with the same verb and
  /// subject replaces them. Relation-terminating verbs end every active
  /// relation between their subject and object.
  VerbInstanceId exec_relation(const ParsedSentence& s, SceneId scene, std::optional<InstanceId> speaker = {}) {
    InstanceId subject = resolve_top(s.subject, scene, speaker);
    InstanceId object = resolve_top(*s.object, scene, speaker);
    const VerbEntry verb = verb_of(s);
    if (verb.category == VerbCategory::relation_terminating) {
      for (const auto& v : state_.vis()) {
        if (v.in_focus && v.category == VerbCategory::relation && v.subject == subject && v.object == object)
          state_.vi(v.id).in_focus = false;
      }
    } else if (verb.category == VerbCategory::relation && state_.instance(subject).is_group() &&
               is_element_of(object, subject)) {
      add_member(subject, object);
    }
    VerbInstance vi;
    vi.form = VerbForm::svo;
    vi.subject = subject;
    vi.object = object;
    return emit(s, scene, std::move(vi));
  }

  /// Membership verbs (`becomes-right-of`) make the subject a member of the
  /// group named by the object.
  VerbInstanceId exec_group_sentence(const ParsedSentence& s, SceneId scene, std::optional<InstanceId> speaker = {}) {
    InstanceId subject = resolve_top(s.subject, scene, speaker);
    InstanceId object = resolve_top(*s.object, scene, speaker);
    if (!state_.instance(object).is_group())
      throw Error(ErrorCode::not_a_group, "'" + print_reference(*s.object) + "' is not a group");
    add_member(object, subject);
    VerbInstance vi;
    vi.form = VerbForm::svo;
    vi.subject = subject;
    vi.object = object;
    return emit(s, scene, std::move(vi));
  }

  VerbInstanceId exec_action(const ParsedSentence& s, SceneId scene, std::optional<InstanceId> speaker = {}) {
    VerbInstance vi;
    vi.subject = resolve_top(s.subject, scene, speaker);
    vi.form = VerbForm::sv;
    if (s.form == SentenceForm::svo) {
      vi.form = VerbForm::svo;
      if (s.object->is_text()) {
        vi.text = s.object->text_literal;
      } else {
        vi.object = resolve_top(*s.object, scene, speaker);
      }
    }
    return emit(s, scene, std::move(vi));
  }

  /// Executes the quoted sentence in the quote scene (where `I` is the
  /// speaker's counterpart), then records the outer VI pointing at it.
  VerbInstanceId exec_quote(const ParsedSentence& s, SceneId scene, std::optional<InstanceId> speaker = {}) {
    InstanceId outer_subject = resolve_top(s.subject, scene, speaker);
    SceneId quote_scene = resolve_scene(*s.quote_scene);
    VerbInstanceId inner = exec_in_scene(*s.quoted, quote_scene, outer_subject);
    const VerbInstance& inner_vi = state_.vi(inner);
    bool local = state_.instance(inner_vi.subject).scene == quote_scene &&
                 (!inner_vi.object || state_.instance(*inner_vi.object).scene == quote_scene);
    if (!local)
      throw Error(ErrorCode::malformed_sentence, "a quoted sentence may only involve instances of its own scene");
    VerbInstance vi;
    vi.form = VerbForm::quote;
    vi.subject = outer_subject;
    vi.quoted = inner;
    return emit(s, scene, std::move(vi));
  }

  SceneId exec_scene_macro(const MacroSpec& macro) {
    if (state_.find_scene(macro.scene_label))
      throw Error(ErrorCode::duplicate_scene, "scene #" + macro.scene_label + " already exists");
    const std::optional<SceneId> prior = state_.current_scene();
    if (!prior && macro.scene_relation)
      throw Error(ErrorCode::unknown_scene, "relation '" + *macro.scene_relation + "' needs a current scene");
    SceneId scene = state_.add_scene(macro.scene_label);
    for (const auto& member : macro.members) {
      std::optional<InstanceId> source;
      if (member.source) {
        if (!prior) throw Error(ErrorCode::unknown_scene, "no current scene to take '->' sources from");
        std::vector<InstanceId> taken;
        source = resolve(*member.source, *prior, std::nullopt, false, taken);
      }
      InstanceId id = create_instance(scene, member.attributes, member.proper_name);
      if (source) state_.add_identity(*source, id);
    }
    if (macro.scene_relation) state_.add_scene_relation(*prior, *macro.scene_relation, scene);
    switch (macro.kind) {
      case MacroKind::new_scene_only:
        for (const auto& v : state_.vis())
          if (v.scene != scene) state_.vi(v.id).in_focus = false;
        state_.set_current(scene);
        break;
      case MacroKind::new_scene_current: state_.set_current(scene); break;
      case MacroKind::new_scene:
      case MacroKind::quote_continuation: break;
    }
    return scene;
  }

  /// `is-current-scene`, `clone-scene` and scene-relation verbs. Creates no VI.
  void exec_scene_sentence(const ParsedSentence& s) {
    const VerbEntry verb = verb_of(s);
    if (s.thus || s.verb_label || s.in_summary)
      throw Error(ErrorCode::malformed_sentence, "scene sentences take no 'thus', label or 'in-summary'");
    SceneId source = resolve_scene(*s.subject.scene_ref);
    if (verb.base_word() == "is-current-scene") {
      state_.set_current(source);
      return;
    }
    const SceneRef& target_ref = *s.object->scene_ref;
    if (verb.base_word() == "clone-scene") {
      if (!target_ref.label) throw Error(ErrorCode::malformed_sentence, "clone-scene needs a label for the new scene");
      bool exists = std::any_of(state_.scenes().begin(), state_.scenes().end(), [&](const Scene& sc) {
        return sc.label && (target_ref.by_name ? iequals(*sc.label, *target_ref.label) : *sc.label == *target_ref.label);
      });
      if (exists) throw Error(ErrorCode::duplicate_scene, "scene " + detail::print_scene_name(target_ref) + " already exists");
      clone_scene(source, *target_ref.label);
      return;
    }
    state_.add_scene_relation(source, s.verb, resolve_scene(target_ref));
  }

 private:
  static bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
             return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
  }

  VerbEntry verb_of(const ParsedSentence& s) const {
    auto verb = lexicon_.find_verb(s.verb);
    if (!verb) throw Error(ErrorCode::unknown_verb, "'" + s.verb + "' is not a known verb", s.pos);
    return *verb;
  }

  SceneId ensure_scene() {
    if (auto current = state_.current_scene()) return *current;
    return state_.add_scene(std::nullopt);
  }

  void dispatch(const ParsedSentence& s) {
    if (s.form == SentenceForm::scene_macro) {
      exec_scene_macro(*s.macro);
      return;
    }
    if (s.is_continuation()) throw Error(ErrorCode::orphan_continuation, "'$..' without a preceding quote", s.pos);
    SceneId scene = ensure_scene();
    if (verb_of(s).category == VerbCategory::meta_scene) {
      exec_scene_sentence(s);
      return;
    }
    exec_in_scene(s, scene, std::nullopt);
  }

  VerbInstanceId exec_in_scene(const ParsedSentence& s, SceneId scene, std::optional<InstanceId> speaker) {
    const VerbEntry verb = verb_of(s);
    if (s.form == SentenceForm::quote) return exec_quote(s, scene, speaker);
    switch (verb.category) {
      case VerbCategory::meta_scene:
        throw Error(ErrorCode::malformed_sentence, "scene sentences cannot be quoted");
      case VerbCategory::attribute: return exec_is_a(s, scene, speaker);
      case VerbCategory::change: return exec_change(s, scene, speaker);
      case VerbCategory::identity: return exec_identity(s, scene, speaker);
      case VerbCategory::relation:
      case VerbCategory::relation_terminating: return exec_relation(s, scene, speaker);
      case VerbCategory::membership: return exec_group_sentence(s, scene, speaker);
      default: return exec_action(s, scene, speaker);
    }
  }

  /// Creates the VI and applies what every sentence shares: label binding,
  /// coincidence (thus) or succession, summarization, and focus upkeep.
  VerbInstanceId emit(const ParsedSentence& s, SceneId scene, VerbInstance vi) {
    const VerbEntry verb = verb_of(s);
    std::optional<VerbInstanceId> anchor;
    if (s.thus) {
      if (s.thus->label) {
        anchor = state_.find_label(*s.thus->label);
        if (!anchor) throw Error(ErrorCode::unknown_label, "unknown label #" + *s.thus->label);
        if (!state_.vi(*anchor).in_focus)
          throw Error(ErrorCode::no_anchor, "the VI labeled #" + *s.thus->label + " is no longer in focus");
      } else {
        anchor = state_.last_vi_in(scene);
        if (!anchor) throw Error(ErrorCode::no_anchor, "'thus' has no earlier sentence in this scene to attach to");
        if (!state_.vi(*anchor).in_focus)
          throw Error(ErrorCode::no_anchor, "'thus' anchor is no longer in focus");
      }
    }
    const std::optional<VerbInstanceId> previous = state_.last_vi_in(scene);

    vi.scene = scene;
    vi.category = verb.category;
    vi.verb = s.verb;
    vi.negated = verb.negated;
    vi.in_summary = s.in_summary;
    VerbInstanceId id = state_.add_vi(std::move(vi));
    if (s.verb_label) state_.bind_label(*s.verb_label, id);

    if (anchor) {
      state_.add_link(LinkKind::coincidence, *anchor, id);
    } else if (previous) {
      state_.add_link(LinkKind::succession, *previous, id);
    }
    if (s.in_summary) summarize(id);
    update_focus(id);
    return id;
  }

  // Summarization edges to every in-focus VI of the scene that shares a
  // participant (through identity chains) with the summary's subject group.
  void summarize(VerbInstanceId summary_id) {
    const VerbInstance summary = state_.vi(summary_id);
    std::set<InstanceId> participants;
    auto add_chain = [&](InstanceId id) {
      for (InstanceId other : identity_chain(state_, id)) participants.insert(other);
    };
    add_chain(summary.subject);
    for (InstanceId member : state_.instance(summary.subject).group_members) add_chain(member);
    for (const auto& v : state_.vis()) {
      if (v.id == summary_id || !v.in_focus || v.scene != summary.scene) continue;
      bool shares = participants.count(v.subject) || (v.object && participants.count(*v.object));
      if (shares) state_.add_link(LinkKind::summarization, summary_id, v.id);
    }
  }

  void update_focus(VerbInstanceId id) {
    const VerbInstance fresh = state_.vi(id);
    if (fresh.category == VerbCategory::relation) {
      // Owned copy: find_verb returns by value.
      const std::string base(lexicon_.find_verb(fresh.verb)->base_word());
      for (const auto& v : state_.vis()) {
        if (v.id == id || !v.in_focus || v.category != VerbCategory::relation) continue;
        if (v.scene == fresh.scene && v.subject == fresh.subject && lexicon_.find_verb(v.verb)->base_word() == base)
          state_.vi(v.id).in_focus = false;
      }
    }
    if (is_persistent(fresh.category)) return;
    std::vector<VerbInstanceId> window;
    for (const auto& v : state_.vis())
      if (v.in_focus && v.scene == fresh.scene && !is_persistent(v.category)) window.push_back(v.id);
    for (std::size_t i = 0; i + options_.focus_window < window.size(); ++i) state_.vi(window[i]).in_focus = false;
  }

  void defocus_instance(InstanceId id) {
    Instance& inst = state_.instance(id);
    inst.in_focus = false;
    for (InstanceId member : inst.group_members) state_.instance(member).in_focus = false;
  }

  void add_attributes(InstanceId id, const std::vector<std::string>& words) {
    auto added = lexicon_.implied_closure(words);
    if (auto conflict = lexicon_.first_conflict(added))
      throw Error(ErrorCode::incompatible_attributes,
                  "'" + conflict->first + "' and '" + conflict->second + "' exclude each other");
    Instance& inst = state_.instance(id);
    for (const auto& w : added) {
      for (const auto& existing : inst.attributes) {
        if (lexicon_.excludes(w, existing))
          throw Error(ErrorCode::incompatible_attributes, "'" + w + "' is incompatible with '" + existing +
                                                              "'; use 'changes' to express a change");
      }
    }
    for (const auto& w : added)
      if (!inst.has(w)) inst.attributes.push_back(w);
    if (!inst.group_kind) {
      if (inst.has(kPairConcept)) inst.group_kind = GroupKind::pair;
      else if (inst.has(kManyConcept)) inst.group_kind = GroupKind::many;
    }
  }

  InstanceId create_instance(SceneId scene, const std::vector<std::string>& words,
                             const std::optional<std::string>& name) {
    auto attributes = lexicon_.implied_closure(words);
    if (auto conflict = lexicon_.first_conflict(attributes))
      throw Error(ErrorCode::incompatible_attributes,
                  "'" + conflict->first + "' and '" + conflict->second + "' exclude each other");
    InstanceId id = state_.add_instance(scene, std::move(attributes), name);
    Instance& inst = state_.instance(id);
    if (inst.has(kPairConcept)) inst.group_kind = GroupKind::pair;
    else if (inst.has(kManyConcept)) inst.group_kind = GroupKind::many;
    return id;
  }

  void add_member(InstanceId group_id, InstanceId member) {
    Instance& group = state_.instance(group_id);
    if (!group.is_group()) throw Error(ErrorCode::not_a_group, "instance " + std::to_string(group_id.value) + " is not a group");
    if (member == group_id) throw Error(ErrorCode::not_a_group, "a group cannot contain itself");
    if (std::find(group.group_members.begin(), group.group_members.end(), member) != group.group_members.end()) return;
    if (group.group_kind == GroupKind::pair && group.group_members.size() >= 2)
      throw Error(ErrorCode::group_full, "the pair already has two members");
    group.group_members.push_back(member);
  }

  // A group's element kind is its attributes minus the number-sense words;
  // an instance carrying all of them is an element (`many pencil` / `red pencil`).
  bool is_element_of(InstanceId candidate, InstanceId group_id) const {
    const Instance& group = state_.instance(group_id);
    const Instance& inst = state_.instance(candidate);
    bool any = false;
    for (const auto& a : group.attributes) {
      if (a == kPairConcept || a == kManyConcept) continue;
      any = true;
      if (!inst.has(a)) return false;
    }
    return any && !inst.is_group();
  }

  void clone_scene(SceneId source, const std::string& label) {
    SceneId target = state_.add_scene(label);
    std::vector<std::pair<InstanceId, InstanceId>> copies;
    std::vector<Instance> originals;
    for (InstanceId id : state_.scene(source).members)
      if (state_.instance(id).in_focus) originals.push_back(state_.instance(id));
    for (const auto& original : originals) {
      InstanceId copy = state_.add_instance(target, original.attributes, original.proper_name);
      state_.instance(copy).group_kind = original.group_kind;
      state_.add_identity(original.id, copy);
      copies.emplace_back(original.id, copy);
    }
    for (const auto& original : originals) {
      if (!original.is_group()) continue;
      InstanceId copy = std::find_if(copies.begin(), copies.end(), [&](auto& p) { return p.first == original.id; })->second;
      for (InstanceId member : original.group_members) {
        auto it = std::find_if(copies.begin(), copies.end(), [&](auto& p) { return p.first == member; });
        if (it != copies.end()) state_.instance(copy).group_members.push_back(it->second);
      }
    }
    state_.add_scene_relation(source, std::string(kCloneRelation), target);
  }

  InstanceId resolve_top(const ReferenceExpr& ref, SceneId scene, std::optional<InstanceId> speaker) {
    std::vector<InstanceId> taken;
    return resolve(ref, scene, speaker, true, taken);
  }

  static bool matches(const Instance& inst, const ReferenceExpr& ref) {
    if (ref.proper_name && inst.proper_name != ref.proper_name) return false;
    return std::all_of(ref.attributes.begin(), ref.attributes.end(), [&](const auto& a) { return inst.has(a); });
  }

  std::optional<InstanceId> find_in_focus(const ReferenceExpr& ref, SceneId scene,
                                          const std::vector<InstanceId>& taken) const {
    const auto& all = state_.instances();
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
      if (it->scene != scene || !it->in_focus) continue;
      if (std::find(taken.begin(), taken.end(), it->id) != taken.end()) continue;
      if (matches(*it, ref)) return it->id;
    }
    return std::nullopt;
  }

  InstanceId resolve(const ReferenceExpr& ref, SceneId scene, std::optional<InstanceId> speaker, bool allow_introduce,
                     std::vector<InstanceId>& taken) {
    InstanceId id = resolve_inner(ref, scene, speaker, allow_introduce, taken);
    if (record_) record_->resolved.push_back(ResolvedReference{print_reference(ref), id});
    return id;
  }

  InstanceId resolve_inner(const ReferenceExpr& ref, SceneId scene, std::optional<InstanceId> speaker,
                           bool allow_introduce, std::vector<InstanceId>& taken) {
    if (ref.is_scene_ref() || ref.is_text())
      throw Error(ErrorCode::malformed_reference, "'" + print_reference(ref) + "' does not name an instance");

    if (ref.is_group()) {
      std::vector<InstanceId> parts;
      for (const auto& part : ref.group_parts) {
        InstanceId id = resolve(part, scene, speaker, allow_introduce, parts);
        parts.push_back(id);
      }
      return find_or_create_group(scene, parts);
    }

    if (ref.pronoun) {
      if (!speaker) throw Error(ErrorCode::no_counterpart, "'I' can only be used inside a quote");
      std::optional<InstanceId> best;
      for (InstanceId id : identity_chain(state_, *speaker)) {
        const Instance& inst = state_.instance(id);
        if (inst.scene == scene && inst.in_focus) best = id;
      }
      if (best) return *best;
      if (const auto& name = state_.instance(*speaker).proper_name) {
        ReferenceExpr by_name;
        by_name.proper_name = name;
        if (auto id = find_in_focus(by_name, scene, taken)) return *id;
      }
      throw Error(ErrorCode::no_counterpart, "the speaker has no counterpart in this scene");
    }

    if (ref.scene_qualifier) {
      SceneId other = resolve_scene(*ref.scene_qualifier);
      ReferenceExpr local = ref;
      local.scene_qualifier.reset();
      return resolve(local, other, speaker, false, taken);
    }

    if (ref.relation_path) {
      if (ref.article == Article::indefinite)
        throw Error(ErrorCode::malformed_reference, "an indefinite reference cannot use '-- of --'");
      std::vector<InstanceId> none;
      InstanceId owner = resolve(*ref.relation_path->target, scene, speaker, false, none);
      const auto& vis = state_.vis();
      for (auto it = vis.rbegin(); it != vis.rend(); ++it) {
        if (!it->in_focus || it->category != VerbCategory::relation || it->subject != owner || !it->object) continue;
        const Instance& candidate = state_.instance(*it->object);
        if (candidate.in_focus && matches(candidate, ref) &&
            std::find(taken.begin(), taken.end(), candidate.id) == taken.end())
          return candidate.id;
      }
      throw Error(ErrorCode::no_relation, "no active relation gives '" + print_reference(ref) + "'");
    }

    if (ref.article == Article::indefinite) return create_instance(scene, ref.attributes, ref.proper_name);

    if (auto id = find_in_focus(ref, scene, taken)) return *id;
    if (ref.article == Article::none && ref.proper_name && allow_introduce)
      return create_instance(scene, ref.attributes, ref.proper_name);
    throw Error(ErrorCode::no_match, "nothing in focus matches '" + print_reference(ref) + "'");
  }

  InstanceId find_or_create_group(SceneId scene, const std::vector<InstanceId>& members) {
    std::vector<InstanceId> key = members;
    std::sort(key.begin(), key.end());
    const auto& all = state_.instances();
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
      if (it->scene != scene || !it->in_focus || !it->is_group()) continue;
      std::vector<InstanceId> have = it->group_members;
      std::sort(have.begin(), have.end());
      if (have == key) return it->id;
    }
    std::string kind(members.size() == 2 ? kPairConcept : kManyConcept);
    InstanceId id = state_.add_instance(scene, {kind});
    Instance& group = state_.instance(id);
    group.group_kind = members.size() == 2 ? GroupKind::pair : GroupKind::many;
    group.group_members = members;
    return id;
  }

  const Lexicon& lexicon_;
  StoryState& state_;
  ExecutorOptions options_;
  SentenceRecord* record_ = nullptr;
};

/// Parses nothing; runs already-parsed sentences from a fresh executor.
inline ExecutionTrace execute_story(std::span<const ParsedSentence> sentences, StoryState& state,
                                    const Lexicon& lexicon, ExecutorOptions options = {}) {
  return Executor(lexicon, state, options).execute_story(sentences);
}

}  // namespace xapi
