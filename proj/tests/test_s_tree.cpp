#include <gtest/gtest.h>

#include "support.hpp"

using namespace swconn;
using namespace swconn::testing;

namespace {

// Structural fingerprint: every vertex's parent, weight and size.
std::vector<std::tuple<VertexId, Slot, Timestamp, Slot>> state_of(const OmstSTree& s) {
  std::vector<std::tuple<VertexId, Slot, Timestamp, Slot>> out;
  const auto& f = s.forest();
  for (Slot x = 0; x < f.slot_capacity(); ++x) {
    if (f.live(x)) out.emplace_back(f.id(x), f.parent(x), f.weight(x), f.size(x));
  }
  return out;
}

}  // namespace

TEST(STreeFindRoot, RootSingletonAndPairs) {
  OmstSTree s;
  EXPECT_EQ(s.find_root(99), std::make_pair(VertexId{99}, 0u));  // unknown: isolated
  s.link(1, 0, 1);  // b under a
  EXPECT_EQ(s.find_root(0), std::make_pair(VertexId{0}, 0u));
  EXPECT_EQ(s.find_root(1), std::make_pair(VertexId{0}, 1u));
}

TEST(STreeFindRoot, ChainMatchesParentWalk) {
  OmstSTree s;
  s.insert({0, 1, 1});
  s.insert({1, 2, 2});
  s.insert({2, 3, 3});
  for (VertexId v = 0; v < 4; ++v) {
    const auto [root, depth] = s.find_root(v);
    const auto& f = s.forest();
    Slot x = f.slot(v);
    std::uint32_t hops = 0;
    while (f.parent(x) != kNoSlot) x = f.parent(x), ++hops;
    EXPECT_EQ(root, f.id(x));
    EXPECT_EQ(depth, hops);
  }
}

TEST(STreeFindRoot, ThreeInsertChainDepth) {
  OmstSTree s;
  s.link(1, 0, 1);
  s.link(2, 1, 2);
  EXPECT_EQ(s.find_root(2), std::make_pair(VertexId{0}, 2u));
}

TEST(STreeQuery, BasicCases) {
  OmstSTree s;
  EXPECT_TRUE(s.query(5, 5));
  s.insert({1, 2, 1});
  s.insert({3, 4, 1});
  EXPECT_TRUE(s.query(1, 2));
  EXPECT_FALSE(s.query(1, 3));
  EXPECT_FALSE(s.query(1, 100));
}

TEST(STreeQuery, GAndIInW7) {
  OmstSTree s;
  for (const auto& e : running_w7()) s.insert(e);
  EXPECT_TRUE(s.query(V('G'), V('I')));
}

TEST(STreeQuery, IsPure) {
  OmstSTree s;
  const auto rs = random_stream(5, 80, 300);
  for (const auto& e : rs.edges) s.insert(e);
  const auto before = state_of(s);
  Rng rng(6);
  for (int k = 0; k < 500; ++k) s.query(rng.below(80), rng.below(80));
  EXPECT_EQ(state_of(s), before);
}

TEST(STreeReRoot, SingleEdgeAndNoOp) {
  OmstSTree s;
  s.link(1, 0, 5);
  s.re_root(0);
  EXPECT_EQ(s.find_root(1).first, 0u);
  s.re_root(1);
  EXPECT_EQ(s.find_root(0), std::make_pair(VertexId{1}, 1u));
  EXPECT_TRUE(s.is_tree_edge({0, 1, 5}));
  EXPECT_EQ(forest_defect(s.forest()), "");
}

TEST(STreeInsert, SmallerTreeHangsBelowLarger) {
  OmstSTree s;
  s.insert({0, 1, 1});
  s.insert({0, 2, 1});  // tree {0,1,2}
  s.insert({5, 2, 2});  // singleton 5 joins under 2
  EXPECT_EQ(s.forest().parent(s.forest().slot(5)), s.forest().slot(2));
  s.insert({7, 8, 3});
  s.insert({9, 10, 3});
  s.insert({7, 9, 4});  // equal sizes: 7's tree goes under 9
  EXPECT_EQ(s.forest().parent(s.forest().slot(7)), s.forest().slot(9));
}

TEST(STreeInsert, EqualMinimumIsDiscarded) {
  OmstSTree s;
  s.insert({0, 1, 4});
  s.insert({1, 2, 4});
  const auto before = state_of(s);
  s.insert({0, 2, 4});
  EXPECT_EQ(state_of(s), before);
  EXPECT_EQ(s.tree_weight(), 8u);
}

TEST(STreeInsert, AIEvictsHIAndDCEvictsAC) {
  OmstSTree s;
  for (const auto& e : running_w7()) s.insert(e);
  for (const auto& e : {E('B', 'D', 7), E('A', 'D', 7), E('E', 'F', 7)}) s.remove(e);
  s.insert(E('A', 'I', 12));
  EXPECT_TRUE(s.is_tree_edge(E('A', 'I', 12)));
  EXPECT_FALSE(s.is_tree_edge(E('H', 'I', 11)));
  EXPECT_TRUE(s.is_tree_edge(E('A', 'C', 10)));
  s.insert(E('K', 'B', 12));
  s.insert(E('H', 'D', 12));
  s.insert(E('D', 'C', 12));
  EXPECT_FALSE(s.is_tree_edge(E('A', 'C', 10)));
  EXPECT_TRUE(s.is_tree_edge(E('D', 'C', 12)));
}

TEST(STreeFindMinInCycle, TieAndErrors) {
  OmstSTree s;
  s.link(V('H'), V('A'), 11);
  s.link(V('I'), V('H'), 11);
  const TreeEdge e = s.find_min_in_cycle(V('A'), V('I'));
  EXPECT_EQ(e.weight, 11u);
  EXPECT_EQ(e, (TreeEdge{V('I'), V('H'), 11}));  // last t11 edge on the walk A -> I
  EXPECT_THROW(s.find_min_in_cycle(V('A'), V('A')), PreconditionError);
  s.link(V('Z'), V('Y'), 1);
  EXPECT_THROW(s.find_min_in_cycle(V('A'), V('Z')), PreconditionError);
}

TEST(STreeFindMinInCycle, MatchesPathEnumeration) {
  OmstSTree s;
  Rng rng(31);
  for (int k = 0; k < 300; ++k) s.insert({rng.below(50), rng.below(50), static_cast<Timestamp>(k / 10)});
  const auto& f = s.forest();
  for (int k = 0; k < 500; ++k) {
    const VertexId u = rng.below(50), v = rng.below(50);
    const Slot a = f.slot(u), b = f.slot(v);
    if (a == kNoSlot || b == kNoSlot || a == b) continue;
    const auto path = tree_path(f, a, b);
    if (path.empty()) continue;
    Timestamp best = f.weight(path[0]);
    for (Slot c : path) best = std::min(best, f.weight(c));
    EXPECT_EQ(s.find_min_in_cycle(u, v).weight, best);
  }
}

TEST(STreeDelete, TreeEdgeCutOthersIgnored) {
  OmstSTree s;
  s.insert({0, 1, 3});
  s.insert({0, 1, 3});  // discarded duplicate
  s.remove({0, 1, 2});  // stale timestamp: no-op
  EXPECT_TRUE(s.query(0, 1));
  s.remove({1, 0, 3});
  EXPECT_FALSE(s.query(0, 1));
  s.remove({0, 1, 3});  // the duplicate: no-op
  s.remove({40, 41, 3});
  EXPECT_EQ(s.tree_edge_count(), 0u);
  EXPECT_EQ(s.vertex_count(), 2u);  // isolated vertices are kept
  EXPECT_EQ(s.counters().replacement_searches, 0u);
  EXPECT_EQ(s.compact(), 2u);
  EXPECT_EQ(s.vertex_count(), 0u);
}

TEST(STreeDelete, BDCutWithoutSearch) {
  OmstSTree s;
  for (const auto& e : running_w7()) s.insert(e);
  const bool was_tree = s.is_tree_edge(E('B', 'D', 7));
  const auto edges = s.tree_edge_count();
  s.remove(E('B', 'D', 7));
  EXPECT_EQ(s.tree_edge_count(), edges - (was_tree ? 1 : 0));
  EXPECT_EQ(s.counters().replacement_searches, 0u);
  EXPECT_EQ(forest_defect(s.forest()), "");
}

TEST(STreeMemory, NoNonTreeStorage) {
  OmstSTree s;
  for (const auto& e : running_w7()) s.insert(e);
  const auto m = s.memory();
  EXPECT_EQ(m.nontree_edges, 0u);
  EXPECT_EQ(m.tree_edges, 8u);
  EXPECT_EQ(m.vertices, 9u);
  EXPECT_GT(m.logical_bytes, 0u);
}
