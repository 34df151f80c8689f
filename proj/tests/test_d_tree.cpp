#include <gtest/gtest.h>

#include <map>
#include <set>

#include "support.hpp"

using namespace swconn;
using namespace swconn::testing;

TEST(Technique1, BalancedStarIsUnchanged) {
  OmstDTree d;
  for (VertexId leaf = 1; leaf <= 4; ++leaf) d.link(leaf, 0, 1);
  EXPECT_FALSE(d.technique1_promote(3));
  EXPECT_EQ(d.find_root(3), std::make_pair(VertexId{0}, 1u));
}

TEST(Technique1, PathOfThreePromotesMiddle) {
  OmstDTree d;
  d.link(1, 0, 1);  // b under a
  d.link(2, 1, 1);  // c under b
  EXPECT_TRUE(d.technique1_promote(2));
  EXPECT_EQ(d.find_root(2), std::make_pair(VertexId{1}, 1u));
  const auto& f = d.forest();
  EXPECT_EQ(f.size(f.slot(1)), 3u);
  EXPECT_EQ(f.size(f.slot(0)), 1u);
  EXPECT_EQ(f.size(f.slot(2)), 1u);
  EXPECT_EQ(forest_defect(f), "");
}

TEST(Technique1, FiresOnQueryTraversals) {
  MstDTree d;
  d.link(1, 0, 1);
  d.link(2, 1, 1);
  d.link(3, 2, 1);
  EXPECT_TRUE(d.query(3, 0));
  EXPECT_EQ(d.find_root(0).first, 1u);  // 1 held 3 of 4 vertices
  EXPECT_EQ(forest_defect(d.forest()), "");
}

TEST(Technique2, SmallGapIsUnchanged) {
  OmstDTree d;
  d.link(1, 0, 1);
  d.link(2, 1, 1);
  d.link(3, 0, 1);
  EXPECT_FALSE(d.technique2_shortcut(2, 3, 9));  // depths 2 and 1
  EXPECT_EQ(d.parent_of(2), VertexId{1});
}

TEST(Technique2, MstVariantStoresDetachedEdgeSymmetrically) {
  MstDTree d;
  build_w8_tree(d);
  d.re_root(V('C'));
  EXPECT_TRUE(d.technique2_shortcut(V('C'), V('H'), 12));
  EXPECT_EQ(d.parent_of(V('H')), V('C'));
  EXPECT_TRUE(d.is_non_tree_edge(E('D', 'H', 12)));
  EXPECT_TRUE(d.is_non_tree_edge(E('H', 'D', 12)));
  EXPECT_EQ(d.non_tree_edge_count(), 1u);
  EXPECT_EQ(canonical(d.non_tree_edges()), canonical(std::vector<StreamingEdge>{E('D', 'H', 12)}));
}

TEST(Technique2, LeavesEndpointsWithinOneLevel) {
  Rng rng(3);
  for (int round = 0; round < 200; ++round) {
    MstDTree d;
    const VertexId n = 30;
    for (VertexId v = 1; v < n; ++v) d.link(v, rng.below(v), rng.between(1, 5));
    const VertexId u = rng.below(n), v = rng.below(n);
    if (u == v) continue;
    d.technique2_shortcut(u, v, 100);
    const auto du = d.find_root(u).second, dv = d.find_root(v).second;
    EXPECT_LE(du > dv ? du - dv : dv - du, 1u);
    EXPECT_EQ(forest_defect(d.forest()), "");
    EXPECT_EQ(d.tree_edge_count(), n - 1);
  }
}

TEST(Technique2, RequiresConnectedEndpoints) {
  OmstDTree d;
  d.link(1, 0, 1);
  d.link(3, 2, 1);
  EXPECT_THROW(d.technique2_shortcut(0, 3, 5), PreconditionError);
}

namespace {

// Vanilla index plus the oracle's view of its state right before a delete.
struct Snapshot {
  std::map<VertexId, VertexId> parent;
  std::vector<StreamingEdge> nontree;
};

Snapshot snapshot(const VanillaDTree& d) {
  Snapshot s;
  for (const auto& e : d.tree_edges()) s.parent[e.child] = e.parent;
  s.nontree = d.non_tree_edges();
  return s;
}

VertexId root_of(const std::map<VertexId, VertexId>& parent, VertexId v, std::uint32_t* depth) {
  *depth = 0;
  for (auto it = parent.find(v); it != parent.end(); it = parent.find(v)) v = it->second, ++*depth;
  return v;
}

}  // namespace

TEST(Technique3, ReplacementHasMinimalOutsideDepth) {
  int with_candidates = 0, without = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    Rng rng(seed);
    VanillaDTree d;
    const VertexId n = rng.between(4, 25);
    const std::size_t m = rng.between(n, 4 * n);
    for (std::size_t k = 0; k < m; ++k) {
      const VertexId a = rng.below(n), b = rng.below(n);
      if (a != b) d.insert({a, b, k});
    }
    auto tree = d.tree_edges();
    if (tree.empty()) continue;
    const TreeEdge victim = tree[rng.below(tree.size())];

    Snapshot s = snapshot(d);
    s.parent.erase(victim.child);
    std::uint32_t depth = 0;
    std::set<VertexId> child_side;
    for (VertexId v = 0; v < n; ++v) {
      if (root_of(s.parent, v, &depth) == victim.child) child_side.insert(v);
    }
    const VertexId other_root = root_of(s.parent, victim.parent, &depth);
    std::size_t other_size = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (root_of(s.parent, v, &depth) == other_root && !child_side.count(v)) ++other_size;
    }
    const bool child_is_small = child_side.size() <= other_size;
    std::optional<std::uint32_t> best;
    for (const auto& e : s.nontree) {
      const bool in_u = child_side.count(e.u) > 0, in_v = child_side.count(e.v) > 0;
      if (in_u == in_v) continue;
      // Depth of the endpoint outside the scanned (smaller) side.
      const VertexId outside = child_is_small ? (in_u ? e.v : e.u) : (in_u ? e.u : e.v);
      root_of(s.parent, outside, &depth);
      if (!best || depth < *best) best = depth;
    }
    const auto before = d.counters().replacement_searches;
    d.remove(victim.as_edge());
    EXPECT_EQ(d.counters().replacement_searches, before + 1);
    if (!best) {
      EXPECT_FALSE(d.last_replacement().has_value());
      EXPECT_FALSE(d.query(victim.child, victim.parent));
      ++without;
      continue;
    }
    ++with_candidates;
    ASSERT_TRUE(d.last_replacement().has_value());
    const StreamingEdge r = *d.last_replacement();
    const VertexId outside_r = child_side.count(r.u) ? (child_is_small ? r.v : r.u) : (child_is_small ? r.u : r.v);
    root_of(s.parent, outside_r, &depth);
    EXPECT_EQ(depth, *best) << "seed " << seed;
    EXPECT_TRUE(d.query(victim.child, victim.parent));
    EXPECT_EQ(forest_defect(d.forest()), "");
  }
  EXPECT_GT(with_candidates, 50);
  EXPECT_GT(without, 5);
}

TEST(Technique3, BridgeWithoutCandidatesSplits) {
  VanillaDTree d;
  d.insert({0, 1, 1});
  d.insert({1, 2, 2});
  d.remove({1, 2, 2});
  EXPECT_EQ(d.counters().replacement_searches, 1u);
  EXPECT_FALSE(d.last_replacement().has_value());
  EXPECT_FALSE(d.query(0, 2));
  EXPECT_TRUE(d.query(0, 1));
}

TEST(DTreeVariants, CycleEvictionStorage) {
  MstDTree mst;
  OmstDTree omst;
  for (const auto& e : running_w7()) {
    mst.insert(e);
    omst.insert(e);
  }
  for (const auto& e : {E('B', 'D', 7), E('A', 'D', 7), E('E', 'F', 7)}) {
    mst.remove(e);
    omst.remove(e);
  }
  const auto before = mst.non_tree_edge_count();
  mst.insert(E('A', 'I', 12));
  omst.insert(E('A', 'I', 12));
  EXPECT_EQ(mst.non_tree_edge_count(), before + 1);
  EXPECT_TRUE(mst.is_non_tree_edge(E('H', 'I', 11)));
  EXPECT_EQ(omst.non_tree_edge_count(), 0u);
  EXPECT_EQ(omst.memory().nontree_edges, 0u);
  EXPECT_EQ(mst.tree_weight(), omst.tree_weight());
}

TEST(DTreeVariants, ReconnectableDeleteCountsOnlyForVanilla) {
  // Triangle 0-1-2; expiring the oldest tree edge leaves a live replacement.
  const std::vector<StreamingEdge> edges = {{0, 1, 1}, {1, 2, 2}, {0, 2, 3}};
  VanillaDTree vanilla;
  MstDTree mst;
  OmstDTree omst;
  for (const auto& e : edges) {
    vanilla.insert(e);
    mst.insert(e);
    omst.insert(e);
  }
  // Vanilla keeps the first two edges in its tree.
  ASSERT_TRUE(vanilla.is_tree_edge(edges[0]));
  vanilla.remove(edges[0]);
  mst.remove(edges[0]);
  omst.remove(edges[0]);
  EXPECT_EQ(vanilla.counters().replacement_searches, 1u);
  EXPECT_EQ(mst.counters().replacement_searches, 0u);
  EXPECT_EQ(omst.counters().replacement_searches, 0u);
  for (ConnectivityIndex* index : std::vector<ConnectivityIndex*>{&vanilla, &mst, &omst}) {
    EXPECT_TRUE(index->query(0, 1)) << index->name();
  }
}

TEST(DTreeVariants, UnknownDeletes) {
  VanillaDTree vanilla;
  MstDTree mst;
  OmstDTree omst;
  vanilla.insert({0, 1, 1});
  mst.insert({0, 1, 1});
  omst.insert({0, 1, 1});
  EXPECT_THROW(vanilla.remove({0, 1, 2}), UnknownEdgeError);
  EXPECT_THROW(mst.remove({0, 5, 1}), UnknownEdgeError);
  EXPECT_THROW(mst.remove({7, 8, 1}), UnknownEdgeError);
  EXPECT_NO_THROW(omst.remove({0, 1, 2}));
  EXPECT_NO_THROW(omst.remove({7, 8, 1}));
  EXPECT_NO_THROW(vanilla.remove({3, 3, 1}));  // self-loops never reach the index
  EXPECT_TRUE(omst.query(0, 1));
}

TEST(DTreeVariants, ParallelEdgesAreDistinct) {
  MstDTree mst;
  mst.insert({0, 1, 1});
  mst.insert({0, 1, 1});
  mst.insert({0, 1, 2});
  EXPECT_EQ(mst.tree_edge_count() + mst.non_tree_edge_count(), 3u);
  EXPECT_TRUE(mst.is_tree_edge({0, 1, 2}));
  mst.remove({0, 1, 1});
  mst.remove({0, 1, 1});
  EXPECT_EQ(mst.non_tree_edge_count(), 0u);
  EXPECT_TRUE(mst.query(0, 1));
  mst.remove({0, 1, 2});
  EXPECT_FALSE(mst.query(0, 1));

  VanillaDTree vanilla;
  vanilla.insert({0, 1, 1});
  vanilla.insert({0, 1, 2});
  vanilla.remove({0, 1, 1});  // the tree edge; the parallel copy replaces it
  EXPECT_TRUE(vanilla.query(0, 1));
  EXPECT_TRUE(vanilla.is_tree_edge({0, 1, 2}));
}

TEST(DTreeVariants, RandomOperationsKeepStructureConsistent) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto rs = random_stream(seed, 40, 400);
    VanillaDTree vanilla;
    MstDTree mst;
    OmstDTree omst;
    std::vector<StreamingEdge> live;
    for (const auto& e : rs.edges) {
      for (ConnectivityIndex* index : std::vector<ConnectivityIndex*>{&vanilla, &mst, &omst}) index->insert(e);
      if (!e.is_self_loop()) live.push_back(e);
      // Expire the oldest timestamp group once the window holds over 30 edges.
      // The maximum-forest total is defined only between whole groups.
      if (live.size() > 30) {
        const Timestamp oldest = live.front().t;
        while (!live.empty() && live.front().t == oldest) {
          const StreamingEdge old = live.front();
          live.erase(live.begin());
          vanilla.remove(old);
          mst.remove(old);
          omst.remove(old);
        }
      }
      ASSERT_EQ(forest_defect(vanilla.forest()), "");
      ASSERT_EQ(forest_defect(mst.forest()), "");
      ASSERT_EQ(forest_defect(omst.forest()), "");
      ASSERT_EQ(mst.tree_edge_count() + mst.non_tree_edge_count(), live.size());
      ASSERT_EQ(vanilla.tree_edge_count() + vanilla.non_tree_edge_count(), live.size());
      ASSERT_EQ(omst.non_tree_edge_count(), 0u);
      ASSERT_EQ(mst.tree_weight(), kruskal_max_forest(live).total_weight);
      ASSERT_EQ(omst.tree_weight(), mst.tree_weight());
    }
  }
}

TEST(DTreeVariants, Names) {
  EXPECT_EQ(VanillaDTree().name(), "vanilla-d");
  EXPECT_EQ(MstDTree().name(), "mst-d");
  EXPECT_EQ(OmstDTree().name(), "omst-d");
}
