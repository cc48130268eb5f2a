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

#include <gtest/gtest.h>

#include "support.hpp"

namespace xapi {
namespace {

using testing::raw;

TEST(Model, IdsAreCreationOrdinals) {
  StoryState s;
  EXPECT_TRUE(s.empty());
  SceneId a = s.add_scene("A");
  SceneId b = s.add_scene(std::nullopt);
  EXPECT_EQ(a.value, 0u);
  EXPECT_EQ(b.value, 1u);
  EXPECT_EQ(s.current_scene(), a);
  InstanceId i = s.add_instance(b, {"cat"});
  EXPECT_EQ(s.instance(i).scene, b);
  EXPECT_EQ(s.scene(b).members, std::vector<InstanceId>{i});
  EXPECT_THROW(s.instance(InstanceId{9}), Error);
  EXPECT_THROW(s.add_instance(SceneId{7}, {}), Error);
}

TEST(Model, ExactlyOneCurrentScene) {
  StoryState s;
  s.add_scene("A");
  SceneId b = s.add_scene("B");
  s.set_current(b);
  int current = 0;
  for (const auto& sc : s.scenes()) current += sc.is_current;
  EXPECT_EQ(current, 1);
  EXPECT_TRUE(s.scene(b).is_current);
}

TEST(Model, IdentityEdges) {
  StoryState s;
  SceneId sc = s.add_scene(std::nullopt);
  InstanceId a = s.add_instance(sc, {}), b = s.add_instance(sc, {}), c = s.add_instance(sc, {});
  EXPECT_TRUE(s.add_identity(b, a));
  EXPECT_FALSE(s.add_identity(a, b));
  EXPECT_EQ(s.identity_edges().size(), 1u);
  EXPECT_EQ(s.identity_edges()[0].a, a);
  EXPECT_THROW(s.add_identity(c, c), Error);
  EXPECT_EQ(identity_chain(s, c), std::vector<InstanceId>{c});
  s.add_identity(c, b);
  EXPECT_EQ(raw(identity_chain(s, a)), (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(Model, Labels) {
  StoryState s;
  SceneId sc = s.add_scene(std::nullopt);
  InstanceId a = s.add_instance(sc, {});
  VerbInstance vi;
  vi.scene = sc;
  vi.subject = a;
  vi.verb = "laughs";
  auto id = s.add_vi(vi);
  s.bind_label("A", id);
  EXPECT_EQ(s.find_label("A"), id);
  EXPECT_FALSE(s.find_label("a"));
  EXPECT_THROW(s.bind_label("A", id), Error);
  vi.subject = InstanceId{5};
  EXPECT_THROW(s.add_vi(vi), Error);
}

TEST(Model, CoincidenceGroupIsAnEquivalence) {
  StoryState s = testing::run("A cat / exists.\nThe cat / laughs.\nThe cat / thus jokes.\nThe cat / thus greets / the cat.\n"
                              "The cat / hits / the cat.\n");
  for (const auto& vi : s.vis()) {
    auto g = coincidence_group(s, vi.id);
    EXPECT_TRUE(std::find(g.begin(), g.end(), vi.id) != g.end());
    for (auto other : g) EXPECT_EQ(coincidence_group(s, other), g);
  }
  EXPECT_EQ(raw(coincidence_group(s, VerbInstanceId{1})), (std::vector<std::uint32_t>{1, 2, 3}));
  EXPECT_EQ(coincidence_group(s, VerbInstanceId{4}).size(), 1u);
}

TEST(Model, ChainOfLawrence) {
  StoryState s = testing::run_corpus("lawrence");
  auto men = testing::instances_with(s, "beduin");
  ASSERT_EQ(men.size(), 1u);
  auto chain = identity_chain(s, men[0]->id);
  auto oracle = testing::oracle_identity_chains(s);
  ASSERT_EQ(oracle.size(), 1u);
  EXPECT_EQ(raw(chain), oracle[0]);
  ASSERT_EQ(chain.size(), 4u);
  EXPECT_TRUE(s.instance(chain[0]).has("speck"));
  EXPECT_TRUE(s.instance(chain[1]).has("mirage"));
  EXPECT_TRUE(s.instance(chain[2]).is_group());
  EXPECT_EQ(chain[3], men[0]->id);
}

TEST(Model, ChainOfTryingCat) {
  StoryState s = testing::run_corpus("trying");
  auto cats = testing::instances_with(s, "cat");
  ASSERT_EQ(cats.size(), 2u);
  EXPECT_EQ(identity_chain(s, cats[0]->id), (std::vector<InstanceId>{cats[0]->id, cats[1]->id}));
  EXPECT_EQ(testing::scene_label(s, cats[0]->scene), "Reality");
  EXPECT_EQ(testing::scene_label(s, cats[1]->scene), "Attempt");
}

TEST(Model, CoincidenceGroupsOfCorpus) {
  auto gives = testing::run_corpus("ownership");
  auto g = coincidence_group(gives, testing::vis_with_verb(gives, "gives")[0]->id);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(gives.vi(g[1]).verb, "receives");

  auto cuts = testing::run_corpus("instrumentality");
  auto c = coincidence_group(cuts, testing::vis_with_verb(cuts, "cuts")[0]->id);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(cuts.vi(c[1]).verb, "uses");
}

TEST(Model, FocusSnapshot) {
  EXPECT_TRUE(focus_snapshot(StoryState{}).empty());

  StoryState lawrence = testing::run_corpus("lawrence");
  StoryState copy = lawrence;
  auto snap = focus_snapshot(lawrence);
  EXPECT_EQ(copy, lawrence);
  ASSERT_EQ(snap.size(), 1u);
  for (const auto& inst : lawrence.instances()) {
    bool listed = std::find(snap[0].instances.begin(), snap[0].instances.end(), inst.id) != snap[0].instances.end();
    EXPECT_EQ(listed, inst.in_focus);
    if (inst.has("speck") || inst.has("mirage") || inst.is_group()) {
      EXPECT_FALSE(inst.in_focus);
    }
    if (inst.has("beduin")) {
      EXPECT_TRUE(inst.in_focus);
    }
  }

  StoryState own = testing::run_corpus("ownership");
  EXPECT_TRUE(testing::vis_with_verb(own, "has")[0]->in_focus);
}

}  // namespace
}  // namespace xapi
