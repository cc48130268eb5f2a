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
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xapi/error.hpp"
#include "xapi/model.hpp"

namespace xapi {

inline constexpr std::string_view kStateFormat = "xapi-state/1";
inline constexpr std::string_view kSummaryFormat = "xapi-summary/1";

// --- summary ----------------------------------------------------------------

struct SceneSummary {
  SceneId id;
  std::optional<std::string> label;
  bool current = false;
  std::size_t instances = 0;
  std::size_t vis = 0;

  friend bool operator==(const SceneSummary&, const SceneSummary&) = default;
};

struct SceneRelationSummary {
  SceneId from;
  std::string relation;
  SceneId to;

  friend bool operator==(const SceneRelationSummary&, const SceneRelationSummary&) = default;
};

/// Structural digest of a state. Singleton chains and groups are omitted.
struct GraphSummary {
  std::vector<SceneSummary> scenes;
  std::vector<SceneRelationSummary> scene_relations;
  std::vector<std::vector<InstanceId>> identity_chains;
  std::vector<std::vector<VerbInstanceId>> coincidence_groups;
  std::size_t succession_links = 0;
  std::size_t coincidence_links = 0;
  std::size_t summarization_links = 0;
  std::vector<SceneFocus> focus;

  /// Canonical text; equal summaries render byte-identically.
  std::string to_text() const {
    std::ostringstream out;
    out << kSummaryFormat << '\n';
    out << "scenes " << scenes.size() << '\n';
    for (const auto& s : scenes) {
      out << "  s" << s.id.value << ' ' << (s.label ? "#" + *s.label : std::string("-"));
      if (s.current) out << " current";
      out << " instances=" << s.instances << " vis=" << s.vis << '\n';
    }
    out << "scene-relations " << scene_relations.size() << '\n';
    for (const auto& r : scene_relations) out << "  s" << r.from.value << ' ' << r.relation << " s" << r.to.value << '\n';
    out << "identity-chains " << identity_chains.size() << '\n';
    for (const auto& chain : identity_chains) {
      out << "  size=" << chain.size();
      for (auto id : chain) out << " i" << id.value;
      out << '\n';
    }
    out << "coincidence-groups " << coincidence_groups.size() << '\n';
    for (const auto& group : coincidence_groups) {
      out << "  size=" << group.size();
      for (auto id : group) out << " v" << id.value;
      out << '\n';
    }
    out << "links succession=" << succession_links << " coincidence=" << coincidence_links
        << " summarization=" << summarization_links << '\n';
    out << "focus\n";
    for (const auto& f : focus) {
      out << "  s" << f.scene.value << " instances:";
      for (auto id : f.instances) out << " i" << id.value;
      out << " | vis:";
      for (auto id : f.vis) out << " v" << id.value;
      out << '\n';
    }
    return out.str();
  }

  friend bool operator==(const GraphSummary&, const GraphSummary&) = default;
};

inline GraphSummary summarize(const StoryState& state) {
  GraphSummary summary;
  for (const auto& scene : state.scenes()) {
    SceneSummary s{scene.id, scene.label, scene.is_current, scene.members.size(), 0};
    for (const auto& vi : state.vis())
      if (vi.scene == scene.id) ++s.vis;
    summary.scenes.push_back(std::move(s));
    for (const auto& r : scene.relations) summary.scene_relations.push_back({scene.id, r.relation, r.target});
  }
  std::set<InstanceId> seen_instances;
  for (const auto& inst : state.instances()) {
    if (seen_instances.count(inst.id)) continue;
    auto chain = identity_chain(state, inst.id);
    seen_instances.insert(chain.begin(), chain.end());
    if (chain.size() > 1) summary.identity_chains.push_back(std::move(chain));
  }
  std::set<VerbInstanceId> seen_vis;
  for (const auto& vi : state.vis()) {
    if (seen_vis.count(vi.id)) continue;
    auto group = coincidence_group(state, vi.id);
    seen_vis.insert(group.begin(), group.end());
    if (group.size() > 1) summary.coincidence_groups.push_back(std::move(group));
  }
  for (const auto& link : state.links()) {
    switch (link.kind) {
      case LinkKind::succession: ++summary.succession_links; break;
      case LinkKind::coincidence: ++summary.coincidence_links; break;
      case LinkKind::summarization: ++summary.summarization_links; break;
    }
  }
  summary.focus = focus_snapshot(state);
  return summary;
}

// --- JSON -------------------------------------------------------------------

using ordered_json = nlohmann::ordered_json;

namespace detail {

template <typename T>
ordered_json optional_json(const std::optional<T>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

template <typename Tag>
ordered_json optional_id(const std::optional<Id<Tag>>& value) {
  return value ? ordered_json(value->value) : ordered_json(nullptr);
}

template <typename Tag>
ordered_json id_list(const std::vector<Id<Tag>>& ids) {
  ordered_json out = ordered_json::array();
  for (auto id : ids) out.push_back(id.value);
  return out;
}

}  // namespace detail

inline ordered_json to_json_value(const StoryState& state) {
  ordered_json root;
  root["format"] = kStateFormat;
  root["current_scene"] = detail::optional_id(state.current_scene());

  ordered_json scenes = ordered_json::array();
  for (const auto& s : state.scenes()) {
    ordered_json relations = ordered_json::array();
    for (const auto& r : s.relations) relations.push_back({{"relation", r.relation}, {"target", r.target.value}});
    scenes.push_back({{"id", s.id.value},
                      {"label", detail::optional_json(s.label)},
                      {"members", detail::id_list(s.members)},
                      {"relations", std::move(relations)},
                      {"is_current", s.is_current}});
  }
  root["scenes"] = std::move(scenes);

  ordered_json instances = ordered_json::array();
  for (const auto& i : state.instances()) {
    instances.push_back({{"id", i.id.value},
                         {"scene", i.scene.value},
                         {"attributes", i.attributes},
                         {"proper_name", detail::optional_json(i.proper_name)},
                         {"in_focus", i.in_focus},
                         {"group_kind", i.group_kind ? ordered_json(to_string(*i.group_kind)) : ordered_json(nullptr)},
                         {"group_members", detail::id_list(i.group_members)}});
  }
  root["instances"] = std::move(instances);

  ordered_json vis = ordered_json::array();
  for (const auto& v : state.vis()) {
    vis.push_back({{"id", v.id.value},
                   {"scene", v.scene.value},
                   {"form", to_string(v.form)},
                   {"category", to_string(v.category)},
                   {"subject", v.subject.value},
                   {"verb", v.verb},
                   {"object", detail::optional_id(v.object)},
                   {"adjectives", v.adjectives},
                   {"quoted", detail::optional_id(v.quoted)},
                   {"text", detail::optional_json(v.text)},
                   {"labels", v.labels},
                   {"in_focus", v.in_focus},
                   {"negated", v.negated},
                   {"in_summary", v.in_summary}});
  }
  root["vis"] = std::move(vis);

  ordered_json identities = ordered_json::array();
  for (const auto& e : state.identity_edges()) identities.push_back({{"a", e.a.value}, {"b", e.b.value}});
  root["identity_edges"] = std::move(identities);

  ordered_json links = ordered_json::array();
  for (const auto& l : state.links())
    links.push_back({{"kind", to_string(l.kind)}, {"from", l.from.value}, {"to", l.to.value}});
  root["links"] = std::move(links);

  ordered_json labels = ordered_json::object();
  for (const auto& [label, id] : state.labels()) labels[label] = id.value;
  root["labels"] = std::move(labels);
  return root;
}

/// Complete, lossless dump (2-space indent, trailing newline).
inline std::string to_json(const StoryState& state) { return to_json_value(state).dump(2) + "\n"; }

/// Rebuilds a state from a to_json() dump, validating every cross reference.
class StateLoader {
 public:
  static StoryState load(const ordered_json& root) {
    try {
      return load_unchecked(root);
    } catch (const ordered_json::exception& e) {
      throw Error(ErrorCode::bad_format, std::string("malformed state JSON: ") + e.what());
    }
  }

 private:
  template <typename T>
  static std::optional<T> opt(const ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
  }

  template <typename IdT>
  static IdT id_in(const ordered_json& j, std::size_t bound, const char* what) {
    auto v = j.get<std::uint32_t>();
    if (v >= bound) throw Error(ErrorCode::bad_format, std::string("dangling ") + what + " id " + std::to_string(v));
    return IdT{v};
  }

  static void check_position(const ordered_json& j, std::size_t index, const char* what) {
    if (j.at("id").get<std::uint32_t>() != index)
      throw Error(ErrorCode::bad_format, std::string(what) + " ids must be consecutive from 0");
  }

  template <typename E>
  static E parse_enum(const std::string& text, std::initializer_list<E> values) {
    for (E v : values)
      if (to_string(v) == text) return v;
    throw Error(ErrorCode::bad_format, "unknown value '" + text + "'");
  }

  static StoryState load_unchecked(const ordered_json& root) {
    if (!root.is_object() || !root.contains("format") || root.at("format") != kStateFormat)
      throw Error(ErrorCode::bad_format, "expected format " + std::string(kStateFormat));
    StoryState state;
    const auto& scenes = root.at("scenes");
    const auto& instances = root.at("instances");
    const auto& vis = root.at("vis");
    const std::size_t n_scenes = scenes.size(), n_instances = instances.size(), n_vis = vis.size();

    for (std::size_t k = 0; k < n_scenes; ++k) {
      const auto& j = scenes[k];
      check_position(j, k, "scene");
      Scene s;
      s.id = SceneId{static_cast<std::uint32_t>(k)};
      s.label = opt<std::string>(j.at("label"));
      for (const auto& m : j.at("members")) s.members.push_back(id_in<InstanceId>(m, n_instances, "instance"));
      for (const auto& r : j.at("relations"))
        s.relations.push_back({r.at("relation").get<std::string>(), id_in<SceneId>(r.at("target"), n_scenes, "scene")});
      s.is_current = j.at("is_current").get<bool>();
      state.scenes_.push_back(std::move(s));
    }
    for (std::size_t k = 0; k < n_instances; ++k) {
      const auto& j = instances[k];
      check_position(j, k, "instance");
      Instance i;
      i.id = InstanceId{static_cast<std::uint32_t>(k)};
      i.scene = id_in<SceneId>(j.at("scene"), n_scenes, "scene");
      i.attributes = j.at("attributes").get<std::vector<std::string>>();
      i.proper_name = opt<std::string>(j.at("proper_name"));
      i.in_focus = j.at("in_focus").get<bool>();
      if (auto kind = opt<std::string>(j.at("group_kind")))
        i.group_kind = parse_enum(*kind, {GroupKind::pair, GroupKind::many});
      for (const auto& m : j.at("group_members"))
        i.group_members.push_back(id_in<InstanceId>(m, n_instances, "instance"));
      state.instances_.push_back(std::move(i));
    }
    for (std::size_t k = 0; k < n_vis; ++k) {
      const auto& j = vis[k];
      check_position(j, k, "vi");
      VerbInstance v;
      v.id = VerbInstanceId{static_cast<std::uint32_t>(k)};
      v.scene = id_in<SceneId>(j.at("scene"), n_scenes, "scene");
      v.form = parse_enum(j.at("form").get<std::string>(), {VerbForm::sv, VerbForm::svo, VerbForm::sv_adj, VerbForm::quote});
      auto category = parse_verb_category(j.at("category").get<std::string>());
      if (!category) throw Error(ErrorCode::bad_format, "unknown verb category");
      v.category = *category;
      v.subject = id_in<InstanceId>(j.at("subject"), n_instances, "instance");
      v.verb = j.at("verb").get<std::string>();
      if (!j.at("object").is_null()) v.object = id_in<InstanceId>(j.at("object"), n_instances, "instance");
      v.adjectives = j.at("adjectives").get<std::vector<std::string>>();
      if (!j.at("quoted").is_null()) v.quoted = id_in<VerbInstanceId>(j.at("quoted"), n_vis, "vi");
      v.text = opt<std::string>(j.at("text"));
      v.labels = j.at("labels").get<std::vector<std::string>>();
      v.in_focus = j.at("in_focus").get<bool>();
      v.negated = j.at("negated").get<bool>();
      v.in_summary = j.at("in_summary").get<bool>();
      state.vis_.push_back(std::move(v));
    }
    for (const auto& e : root.at("identity_edges")) {
      state.identity_edges_.push_back({id_in<InstanceId>(e.at("a"), n_instances, "instance"),
                                       id_in<InstanceId>(e.at("b"), n_instances, "instance")});
    }
    for (const auto& l : root.at("links")) {
      auto kind = parse_enum(l.at("kind").get<std::string>(),
                             {LinkKind::succession, LinkKind::coincidence, LinkKind::summarization});
      state.links_.push_back({kind, id_in<VerbInstanceId>(l.at("from"), n_vis, "vi"),
                              id_in<VerbInstanceId>(l.at("to"), n_vis, "vi")});
    }
    for (const auto& [label, id] : root.at("labels").items())
      state.labels_.emplace(label, id_in<VerbInstanceId>(id, n_vis, "vi"));
    if (!root.at("current_scene").is_null())
      state.current_ = id_in<SceneId>(root.at("current_scene"), n_scenes, "scene");
    return state;
  }
};

inline StoryState from_json(std::string_view text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::bad_format, std::string("invalid JSON: ") + e.what());
  }
  return StateLoader::load(root);
}

// --- DOT --------------------------------------------------------------------

struct DotOptions {
  bool focus_only = false;
  std::optional<std::string> scene_filter;  // scene label
};

namespace detail {

inline std::string dot_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string instance_caption(const Instance& inst) {
  std::string out = "i" + std::to_string(inst.id.value);
  for (const auto& a : inst.attributes) out += " " + a;
  if (inst.proper_name) out += " \"" + *inst.proper_name + "\"";
  return out;
}

}  // namespace detail

/// Scenes as clusters, instances as boxes (filled when in focus), VIs as
/// ellipses. Identity edges dashed, coincidence bold, succession plain.
inline std::string to_dot(const StoryState& state, const DotOptions& options = {}) {
  auto scene_ok = [&](SceneId id) {
    if (!options.scene_filter) return true;
    const auto& label = state.scene(id).label;
    return label && *label == *options.scene_filter;
  };
  auto inst_ok = [&](InstanceId id) {
    const auto& inst = state.instance(id);
    return scene_ok(inst.scene) && (!options.focus_only || inst.in_focus);
  };
  auto vi_ok = [&](VerbInstanceId id) {
    const auto& vi = state.vi(id);
    return scene_ok(vi.scene) && (!options.focus_only || vi.in_focus);
  };

  std::ostringstream out;
  out << "digraph xapi {\n";
  for (const auto& scene : state.scenes()) {
    if (!scene_ok(scene.id)) continue;
    std::string caption = scene.label ? "#" + *scene.label : "s" + std::to_string(scene.id.value);
    for (const auto& r : scene.relations) caption += "\\n" + detail::dot_escape(r.relation) + " -> " +
                                                    (state.scene(r.target).label ? "#" + *state.scene(r.target).label
                                                                                 : "s" + std::to_string(r.target.value));
    out << "  subgraph cluster_s" << scene.id.value << " {\n";
    out << "    label=\"" << caption << "\";\n";
    for (InstanceId id : scene.members) {
      if (!inst_ok(id)) continue;
      const auto& inst = state.instance(id);
      out << "    i" << id.value << " [shape=box, label=\"" << detail::dot_escape(detail::instance_caption(inst)) << "\"";
      if (inst.in_focus) out << ", style=filled, fillcolor=gray80";
      out << "];\n";
    }
    for (const auto& vi : state.vis()) {
      if (vi.scene != scene.id || !vi_ok(vi.id)) continue;
      std::string caption = "v" + std::to_string(vi.id.value) + " " + vi.verb;
      if (vi.text) caption += " \"" + *vi.text + "\"";
      for (const auto& a : vi.adjectives) caption += " " + a;
      out << "    v" << vi.id.value << " [shape=ellipse, label=\"" << detail::dot_escape(caption) << "\"";
      if (vi.in_focus) out << ", style=filled, fillcolor=gray90";
      out << "];\n";
    }
    out << "  }\n";
  }
  for (const auto& vi : state.vis()) {
    if (!vi_ok(vi.id)) continue;
    if (inst_ok(vi.subject)) out << "  v" << vi.id.value << " -> i" << vi.subject.value << " [color=gray50, label=\"s\"];\n";
    if (vi.object && inst_ok(*vi.object))
      out << "  v" << vi.id.value << " -> i" << vi.object->value << " [color=gray50, label=\"o\"];\n";
    if (vi.quoted && vi_ok(*vi.quoted))
      out << "  v" << vi.id.value << " -> v" << vi.quoted->value << " [style=dotted, label=\"quote\"];\n";
  }
  for (const auto& inst : state.instances()) {
    if (!inst_ok(inst.id)) continue;
    for (InstanceId m : inst.group_members)
      if (inst_ok(m)) out << "  i" << inst.id.value << " -> i" << m.value << " [style=dotted, arrowhead=odot];\n";
  }
  for (const auto& e : state.identity_edges()) {
    if (inst_ok(e.a) && inst_ok(e.b))
      out << "  i" << e.a.value << " -> i" << e.b.value << " [style=dashed, dir=none];\n";
  }
  for (const auto& l : state.links()) {
    if (!vi_ok(l.from) || !vi_ok(l.to)) continue;
    out << "  v" << l.from.value << " -> v" << l.to.value;
    switch (l.kind) {
      case LinkKind::succession: out << ";\n"; break;
      case LinkKind::coincidence: out << " [style=bold, dir=none];\n"; break;
      case LinkKind::summarization: out << " [style=dotted, arrowhead=diamond];\n"; break;
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace xapi
