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
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "xapi/error.hpp"
#include "xapi/lexicon.hpp"

namespace xapi {

/// Ordinal identifier, distinct per entity kind.
template <typename Tag>
struct Id {
  std::uint32_t value = 0;

  friend auto operator<=>(const Id&, const Id&) = default;
};

using InstanceId = Id<struct InstanceTag>;
using VerbInstanceId = Id<struct VerbInstanceTag>;
using SceneId = Id<struct SceneTag>;

enum class GroupKind { pair, many };

inline std::string_view to_string(GroupKind kind) { return kind == GroupKind::pair ? "pair" : "many"; }

struct Instance {
  InstanceId id;
  SceneId scene;
  std::vector<std::string> attributes;  // insertion order, never shrinks
  std::optional<std::string> proper_name;
  bool in_focus = true;
  std::optional<GroupKind> group_kind;
  std::vector<InstanceId> group_members;

  bool has(std::string_view attribute) const {
    return std::find(attributes.begin(), attributes.end(), attribute) != attributes.end();
  }
  bool is_group() const { return group_kind.has_value(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class VerbForm { sv, svo, sv_adj, quote };

inline std::string_view to_string(VerbForm form) {
  switch (form) {
    case VerbForm::sv: return "SV";
    case VerbForm::svo: return "SVO";
    case VerbForm::sv_adj: return "SVAdj";
    case VerbForm::quote: return "Quote";
  }
  return "?";
}

/// One executed sentence.
struct VerbInstance {
  VerbInstanceId id;
  SceneId scene;
  VerbForm form = VerbForm::sv;
  VerbCategory category = VerbCategory::action;
  InstanceId subject;
  std::string verb;
  std::optional<InstanceId> object;
  std::vector<std::string> adjectives;
  std::optional<VerbInstanceId> quoted;
  std::optional<std::string> text;  // verbatim payload of utterances
  std::vector<std::string> labels;
  bool in_focus = true;
  bool negated = false;
  bool in_summary = false;

  friend bool operator==(const VerbInstance&, const VerbInstance&) = default;
};

/// Relation and attribute assertions stay in focus until superseded; all
/// other VIs are subject to the per-scene action window.
inline bool is_persistent(VerbCategory category) {
  return category == VerbCategory::relation || category == VerbCategory::attribute ||
         category == VerbCategory::identity || category == VerbCategory::membership;
}

enum class LinkKind { succession, coincidence, summarization };

inline std::string_view to_string(LinkKind kind) {
  switch (kind) {
    case LinkKind::succession: return "succession";
    case LinkKind::coincidence: return "coincidence";
    case LinkKind::summarization: return "summarization";
  }
  return "?";
}

struct LinkEdge {
  LinkKind kind;
  VerbInstanceId from;
  VerbInstanceId to;

  friend bool operator==(const LinkEdge&, const LinkEdge&) = default;
};

/// Undirected; stored with a < b.
struct IdentityEdge {
  InstanceId a;
  InstanceId b;

  friend bool operator==(const IdentityEdge&, const IdentityEdge&) = default;
};

struct SceneRelation {
  std::string relation;
  SceneId target;

  friend bool operator==(const SceneRelation&, const SceneRelation&) = default;
};

struct Scene {
  SceneId id;
  std::optional<std::string> label;
  std::vector<InstanceId> members;
  std::vector<SceneRelation> relations;
  bool is_current = false;

  friend bool operator==(const Scene&, const Scene&) = default;
};

/// Relation name recorded by `clone-scene`.
inline constexpr std::string_view kCloneRelation = "clone";

/// Scenes, instances, verb instances and the edges between them. Ids are
/// indices into the owning vectors, so creation order is id order.
class StoryState {
 public:
  // --- creation ------------------------------------------------------------

  SceneId add_scene(std::optional<std::string> label) {
    SceneId id{static_cast<std::uint32_t>(scenes_.size())};
    scenes_.push_back(Scene{id, std::move(label), {}, {}, false});
    if (!current_) set_current(id);
    return id;
  }

  InstanceId add_instance(SceneId scene, std::vector<std::string> attributes,
                          std::optional<std::string> proper_name = std::nullopt) {
    InstanceId id{static_cast<std::uint32_t>(instances_.size())};
    Instance inst;
    inst.id = id;
    inst.scene = scene;
    inst.attributes = std::move(attributes);
    inst.proper_name = std::move(proper_name);
    instances_.push_back(std::move(inst));
    this->scene(scene).members.push_back(id);
    return id;
  }

  VerbInstanceId add_vi(VerbInstance vi) {
    vi.id = VerbInstanceId{static_cast<std::uint32_t>(vis_.size())};
    instance(vi.subject);
    if (vi.object) instance(*vi.object);
    scene(vi.scene);
    vis_.push_back(std::move(vi));
    return vis_.back().id;
  }

  /// Returns false when the edge already exists.
  bool add_identity(InstanceId a, InstanceId b) {
    if (a == b) throw Error(ErrorCode::invalid_identity, "an instance cannot be identical to itself");
    instance(a);
    instance(b);
    IdentityEdge edge{std::min(a, b), std::max(a, b)};
    if (std::find(identity_edges_.begin(), identity_edges_.end(), edge) != identity_edges_.end()) return false;
    identity_edges_.push_back(edge);
    return true;
  }

  void add_link(LinkKind kind, VerbInstanceId from, VerbInstanceId to) {
    vi(from);
    vi(to);
    links_.push_back(LinkEdge{kind, from, to});
  }

  void add_scene_relation(SceneId from, std::string relation, SceneId to) {
    scene(to);
    scene(from).relations.push_back(SceneRelation{std::move(relation), to});
  }

  void set_current(SceneId id) {
    scene(id);
    if (current_) scenes_[current_->value].is_current = false;
    current_ = id;
    scenes_[id.value].is_current = true;
  }

  void bind_label(const std::string& label, VerbInstanceId id) {
    if (labels_.count(label)) throw Error(ErrorCode::duplicate_label, "label #" + label + " is already bound");
    vi(id).labels.push_back(label);
    labels_.emplace(label, id);
  }

  // --- access --------------------------------------------------------------

  const Instance& instance(InstanceId id) const {
    if (id.value >= instances_.size()) throw Error(ErrorCode::unknown_id, "unknown instance " + std::to_string(id.value));
    return instances_[id.value];
  }
  Instance& instance(InstanceId id) {
    return const_cast<Instance&>(static_cast<const StoryState&>(*this).instance(id));
  }
  const VerbInstance& vi(VerbInstanceId id) const {
    if (id.value >= vis_.size()) throw Error(ErrorCode::unknown_id, "unknown verb instance " + std::to_string(id.value));
    return vis_[id.value];
  }
  VerbInstance& vi(VerbInstanceId id) {
    return const_cast<VerbInstance&>(static_cast<const StoryState&>(*this).vi(id));
  }
  const Scene& scene(SceneId id) const {
    if (id.value >= scenes_.size()) throw Error(ErrorCode::unknown_id, "unknown scene " + std::to_string(id.value));
    return scenes_[id.value];
  }
  Scene& scene(SceneId id) { return const_cast<Scene&>(static_cast<const StoryState&>(*this).scene(id)); }

  const std::vector<Scene>& scenes() const { return scenes_; }
  const std::vector<Instance>& instances() const { return instances_; }
  const std::vector<VerbInstance>& vis() const { return vis_; }
  const std::vector<IdentityEdge>& identity_edges() const { return identity_edges_; }
  const std::vector<LinkEdge>& links() const { return links_; }
  const std::map<std::string, VerbInstanceId>& labels() const { return labels_; }
  std::optional<SceneId> current_scene() const { return current_; }

  std::optional<SceneId> find_scene(std::string_view label) const {
    for (const auto& s : scenes_)
      if (s.label && *s.label == label) return s.id;
    return std::nullopt;
  }

  std::optional<VerbInstanceId> find_label(const std::string& label) const {
    auto it = labels_.find(label);
    if (it == labels_.end()) return std::nullopt;
    return it->second;
  }

  /// Most recently created VI of a scene, in focus or not.
  std::optional<VerbInstanceId> last_vi_in(SceneId scene) const {
    for (auto it = vis_.rbegin(); it != vis_.rend(); ++it)
      if (it->scene == scene) return it->id;
    return std::nullopt;
  }

  std::vector<InstanceId> identity_neighbours(InstanceId id) const {
    std::vector<InstanceId> out;
    for (const auto& e : identity_edges_) {
      if (e.a == id) out.push_back(e.b);
      if (e.b == id) out.push_back(e.a);
    }
    return out;
  }

  bool empty() const { return scenes_.empty() && instances_.empty() && vis_.empty(); }

  friend bool operator==(const StoryState&, const StoryState&) = default;

 private:
  friend class StateLoader;

  std::vector<Scene> scenes_;
  std::vector<Instance> instances_;
  std::vector<VerbInstance> vis_;
  std::vector<IdentityEdge> identity_edges_;
  std::vector<LinkEdge> links_;
  std::map<std::string, VerbInstanceId> labels_;
  std::optional<SceneId> current_;
};

/// Connected component of identity edges containing `id`, by creation order.
inline std::vector<InstanceId> identity_chain(const StoryState& state, InstanceId id) {
  state.instance(id);
  std::set<InstanceId> seen{id};
  std::vector<InstanceId> stack{id};
  while (!stack.empty()) {
    InstanceId cur = stack.back();
    stack.pop_back();
    for (InstanceId n : state.identity_neighbours(cur))
      if (seen.insert(n).second) stack.push_back(n);
  }
  return {seen.begin(), seen.end()};
}

/// Transitive closure of coincidence links through `id`, by creation order.
inline std::vector<VerbInstanceId> coincidence_group(const StoryState& state, VerbInstanceId id) {
  state.vi(id);
  std::set<VerbInstanceId> seen{id};
  std::vector<VerbInstanceId> stack{id};
  while (!stack.empty()) {
    VerbInstanceId cur = stack.back();
    stack.pop_back();
    for (const auto& link : state.links()) {
      if (link.kind != LinkKind::coincidence) continue;
      if (link.from == cur && seen.insert(link.to).second) stack.push_back(link.to);
      if (link.to == cur && seen.insert(link.from).second) stack.push_back(link.from);
    }
  }
  return {seen.begin(), seen.end()};
}

struct SceneFocus {
  SceneId scene;
  std::vector<InstanceId> instances;
  std::vector<VerbInstanceId> vis;

  friend bool operator==(const SceneFocus&, const SceneFocus&) = default;
};

/// In-focus instances and VIs of every scene, in creation order. A pure view.
inline std::vector<SceneFocus> focus_snapshot(const StoryState& state) {
  std::vector<SceneFocus> out;
  for (const auto& scene : state.scenes()) out.push_back(SceneFocus{scene.id, {}, {}});
  for (const auto& inst : state.instances())
    if (inst.in_focus) out[inst.scene.value].instances.push_back(inst.id);
  for (const auto& vi : state.vis())
    if (vi.in_focus) out[vi.scene.value].vis.push_back(vi.id);
  return out;
}

}  // namespace xapi
