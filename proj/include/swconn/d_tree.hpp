#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "swconn/index.hpp"
#include "swconn/rooted_forest.hpp"

namespace swconn {

enum class DTreeVariant {
  kVanilla,  // plain D-Tree: stores non-tree edges, searches for replacements
  kMst,      // maximum spanning forest, non-tree edges stored, no search
  kOmst,     // maximum spanning forest, non-tree edges discarded
};

class UnknownEdgeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// D-Tree family. All variants promote a heavy child of the root during
/// connectivity tests (Technique 1) and shortcut long non-tree edges
/// (Technique 2). Only the vanilla variant searches for replacement edges
/// (Technique 3). The OMST variant keeps no child lists and no non-tree
/// storage, leaving the same per-vertex record as the S-Tree.
template <DTreeVariant kVariant>
class DTree final : public ConnectivityIndex {
 public:
  static constexpr bool kStoresNonTree = kVariant != DTreeVariant::kOmst;
  static constexpr bool kHasChildren = kVariant != DTreeVariant::kOmst;
  using Forest = RootedForest<kHasChildren>;

  DTree() : forest_(counters_) {}

  std::string_view name() const override {
    switch (kVariant) {
      case DTreeVariant::kVanilla: return "vanilla-d";
      case DTreeVariant::kMst: return "mst-d";
      case DTreeVariant::kOmst: return "omst-d";
    }
    return "";
  }

  bool query(VertexId u, VertexId v) override {
    if (u == v) return true;
    const Slot a = forest_.slot(u);
    const Slot b = forest_.slot(v);
    if (a == kNoSlot || b == kNoSlot) return false;
    return connected(a, b);
  }

  void insert(const StreamingEdge& e) override {
    if (e.is_self_loop()) return;
    const Slot a = forest_.ensure(e.u);
    const Slot b = forest_.ensure(e.v);
    if (kStoresNonTree && nontree_.size() < forest_.slot_capacity()) {
      nontree_.resize(forest_.slot_capacity());
    }
    if (!connected(a, b)) {
      link_smaller_into_larger(a, b, e.t);
      return;
    }
    if constexpr (kVariant == DTreeVariant::kVanilla) {
      if (!shortcut(a, b, e.t)) store_nontree(a, b, e.t);
    } else {
      const Slot min_child = forest_.min_on_path(a, b);
      const Timestamp min_weight = forest_.weight(min_child);
      if (min_weight < e.t) {
        const Slot min_parent = forest_.parent(min_child);
        forest_.cut(min_child);
        // The evicted edge is stored as-is; no shortcut is applied to it.
        if constexpr (kStoresNonTree) store_nontree(min_child, min_parent, min_weight);
        link_smaller_into_larger(a, b, e.t);
      } else if (!shortcut(a, b, e.t)) {
        if constexpr (kStoresNonTree) store_nontree(a, b, e.t);
      }
    }
  }

  void remove(const StreamingEdge& e) override {
    if (e.is_self_loop()) return;
    const Slot a = forest_.slot(e.u);
    const Slot b = forest_.slot(e.v);
    if (a == kNoSlot || b == kNoSlot) {
      if constexpr (kStoresNonTree) throw UnknownEdgeError("delete of an edge that was never inserted");
      return;
    }
    if constexpr (kStoresNonTree) {
      if (erase_nontree(a, b, e.t)) return;
    }
    const Slot child = forest_.tree_edge_child(a, b, e.t);
    if (child == kNoSlot) {
      if constexpr (kStoresNonTree) throw UnknownEdgeError("delete of an edge that is not stored");
      return;
    }
    const Slot parent = forest_.parent(child);
    forest_.cut(child);
    if constexpr (kVariant == DTreeVariant::kVanilla) replace(child, parent);
  }

  // --- Techniques and structural primitives --------------------------------

  /// Technique 1 on the root path of v: when the vertex x just below the root
  /// r holds more than half of r's tree, x becomes the root. Returns whether a
  /// promotion happened.
  bool technique1_promote(VertexId v) {
    const Slot s = forest_.slot(v);
    if (s == kNoSlot) return false;
    bool budget = true;
    traverse(s, budget);
    return !budget;
  }

  /// Technique 2 for a non-tree edge (u, v, t) between connected vertices.
  /// Returns whether the tree was restructured.
  bool technique2_shortcut(VertexId u, VertexId v, Timestamp t) {
    const Slot a = forest_.slot(u);
    const Slot b = forest_.slot(v);
    if (a == kNoSlot || b == kNoSlot || a == b) return false;
    if (forest_.find_root(a).root != forest_.find_root(b).root) {
      throw PreconditionError("technique2_shortcut: endpoints are not connected");
    }
    return shortcut(a, b, t);
  }

  /// Attaches child's tree (re-rooted at child) below parent.
  void link(VertexId child, VertexId parent, Timestamp weight) {
    const Slot c = forest_.ensure(child);
    const Slot p = forest_.ensure(parent);
    if (forest_.find_root(c).root == forest_.find_root(p).root) {
      throw PreconditionError("link: endpoints already connected");
    }
    forest_.re_root(c);
    forest_.link(c, p, weight);
  }

  void re_root(VertexId v) {
    const Slot s = forest_.slot(v);
    if (s != kNoSlot) forest_.re_root(s);
  }

  /// Stores e as a non-tree edge without touching the forest.
  void insert_non_tree_edge(const StreamingEdge& e)
    requires kStoresNonTree
  {
    const Slot a = forest_.ensure(e.u);
    const Slot b = forest_.ensure(e.v);
    store_nontree(a, b, e.t);
  }

  std::pair<VertexId, std::uint32_t> find_root(VertexId v) const {
    const Slot s = forest_.slot(v);
    if (s == kNoSlot) return {v, 0};
    auto info = forest_.find_root(s);
    return {forest_.id(info.root), info.depth};
  }

  std::optional<VertexId> parent_of(VertexId v) const {
    const Slot s = forest_.slot(v);
    if (s == kNoSlot || forest_.is_root(s)) return std::nullopt;
    return forest_.id(forest_.parent(s));
  }

  TreeEdge find_min_in_cycle(VertexId u, VertexId v) const {
    const Slot a = forest_.slot(u);
    const Slot b = forest_.slot(v);
    if (a == kNoSlot || b == kNoSlot) throw PreconditionError("find_min_in_cycle: unknown vertex");
    const Slot c = forest_.min_on_path(a, b);
    return {forest_.id(c), forest_.id(forest_.parent(c)), forest_.weight(c)};
  }

  bool is_tree_edge(const StreamingEdge& e) const {
    const Slot a = forest_.slot(e.u);
    const Slot b = forest_.slot(e.v);
    return a != kNoSlot && b != kNoSlot && a != b && forest_.tree_edge_child(a, b, e.t) != kNoSlot;
  }

  bool is_non_tree_edge(const StreamingEdge& e) const {
    if constexpr (!kStoresNonTree) {
      return false;
    } else {
      const Slot a = forest_.slot(e.u);
      const Slot b = forest_.slot(e.v);
      if (a == kNoSlot || b == kNoSlot || a >= nontree_.size()) return false;
      return nontree_[a].count({b, e.t}) > 0;
    }
  }

  /// Every stored non-tree edge once, as (smaller id endpoint, larger, t).
  std::vector<StreamingEdge> non_tree_edges() const {
    std::vector<StreamingEdge> out;
    if constexpr (kStoresNonTree) {
      for (Slot s = 0; s < nontree_.size(); ++s) {
        for (const auto& [other, t] : nontree_[s]) {
          if (forest_.id(s) < forest_.id(other)) out.push_back({forest_.id(s), forest_.id(other), t});
        }
      }
    }
    return out;
  }

  /// Replacement edge chosen by the most recent vanilla tree-edge delete.
  const std::optional<StreamingEdge>& last_replacement() const { return last_replacement_; }

  std::size_t compact() {
    return forest_.compact([this](Slot s) { return kStoresNonTree && s < nontree_.size() && !nontree_[s].empty(); });
  }

  std::size_t tree_edge_count() const override { return forest_.tree_edge_count(); }
  std::size_t non_tree_edge_count() const override { return nontree_count_; }
  std::size_t vertex_count() const override { return forest_.vertex_count(); }
  std::uint64_t tree_weight() const override { return forest_.tree_weight(); }
  std::vector<TreeEdge> tree_edges() const { return forest_.tree_edges(); }
  const Forest& forest() const { return forest_; }

  MemoryFootprint memory() const override {
    std::size_t bytes = forest_.logical_bytes();
    if constexpr (kStoresNonTree) {
      // Ordered-set header per vertex; a tree node per stored endpoint.
      constexpr std::size_t kSetNode = 4 * sizeof(void*) + sizeof(std::pair<Slot, Timestamp>);
      bytes += forest_.vertex_count() * sizeof(std::multiset<std::pair<Slot, Timestamp>>);
      bytes += 2 * nontree_count_ * kSetNode;
    }
    return {forest_.vertex_count(), forest_.tree_edge_count(), nontree_count_, bytes};
  }

 private:
  // Walks from v to its root. With budget left, a child of the root holding
  // more than half of the tree is promoted and the budget is spent.
  typename Forest::RootInfo traverse(Slot v, bool& budget) {
    Slot below = kNoSlot;
    Slot cur = v;
    std::uint32_t depth = 0;
    while (forest_.parent(cur) != kNoSlot) {
      below = cur;
      cur = forest_.parent(cur);
      ++depth;
    }
    counters_.nodes_visited += depth;
    if (budget && below != kNoSlot &&
        2 * static_cast<std::uint64_t>(forest_.size(below)) > forest_.size(cur)) {
      forest_.re_root(below);
      budget = false;
      return {below, depth - 1};
    }
    return {cur, depth};
  }

  // Connectivity test with at most one Technique 1 promotion.
  bool connected(Slot a, Slot b) {
    bool budget = true;
    auto ra = traverse(a, budget);
    const bool had_budget = budget;
    const Slot old_root_a = ra.root;
    auto rb = traverse(b, budget);
    if (had_budget && !budget && forest_.parent(old_root_a) == rb.root) {
      // b's walk promoted the child of a's root.
      return true;
    }
    return ra.root == rb.root;
  }

  void link_smaller_into_larger(Slot a, Slot b, Timestamp t) {
    const Slot ra = forest_.find_root(a).root;
    const Slot rb = forest_.find_root(b).root;
    if (forest_.size(ra) <= forest_.size(rb)) {
      forest_.re_root(a);
      forest_.link(a, b, t);
    } else {
      forest_.re_root(b);
      forest_.link(b, a, t);
    }
  }

  // Technique 2. With depth gap >= 2, the tree edge just below the near
  // endpoint's depth + 1 on the far endpoint's root path is removed and the
  // far endpoint is re-hung below the near one through (a, b, t).
  bool shortcut(Slot a, Slot b, Timestamp t) {
    const auto da = forest_.find_root(a).depth;
    const auto db = forest_.find_root(b).depth;
    const std::uint32_t gap = da > db ? da - db : db - da;
    if (gap < 2) return false;
    const Slot far = da > db ? a : b;
    const Slot near = da > db ? b : a;
    const Slot top = forest_.ancestor(far, gap - 2);
    const Slot top_parent = forest_.parent(top);
    const Timestamp top_weight = forest_.weight(top);
    forest_.cut(top);
    forest_.re_root(far);
    forest_.link(far, near, t);
    if constexpr (kStoresNonTree) store_nontree(top, top_parent, top_weight);
    return true;
  }

  void store_nontree(Slot a, Slot b, Timestamp t)
    requires kStoresNonTree
  {
    if (nontree_.size() < forest_.slot_capacity()) nontree_.resize(forest_.slot_capacity());
    nontree_[a].insert({b, t});
    nontree_[b].insert({a, t});
    ++nontree_count_;
  }

  bool erase_nontree(Slot a, Slot b, Timestamp t)
    requires kStoresNonTree
  {
    if (a >= nontree_.size() || b >= nontree_.size()) return false;
    auto it = nontree_[a].find({b, t});
    if (it == nontree_[a].end()) return false;
    nontree_[a].erase(it);
    nontree_[b].erase(nontree_[b].find({a, t}));
    --nontree_count_;
    return true;
  }

  // Technique 3: child was just cut from parent. Scans the smaller side for
  // non-tree edges leaving it and reconnects through the one whose outside
  // endpoint is closest to its root.
  void replace(Slot child, Slot parent)
    requires(kVariant == DTreeVariant::kVanilla)
  {
    ++counters_.replacement_searches;
    last_replacement_.reset();
    const Slot other_root = forest_.find_root(parent).root;
    const Slot small = forest_.size(child) <= forest_.size(other_root) ? child : other_root;

    if (mark_.size() < forest_.slot_capacity()) {
      mark_.resize(forest_.slot_capacity(), 0);
      depth_mark_.resize(forest_.slot_capacity(), 0);
      depth_cache_.resize(forest_.slot_capacity(), 0);
    }
    ++stamp_;
    bfs_.clear();
    bfs_.push_back(small);
    mark_[small] = stamp_;
    for (std::size_t i = 0; i < bfs_.size(); ++i) {
      for (Slot c : forest_.children(bfs_[i])) {
        mark_[c] = stamp_;
        bfs_.push_back(c);
      }
    }
    counters_.nodes_visited += bfs_.size();

    // (depth of outside endpoint, outside id, inside id, t)
    std::optional<std::tuple<std::uint32_t, VertexId, VertexId, Timestamp>> best;
    Slot best_in = kNoSlot, best_out = kNoSlot;
    for (Slot x : bfs_) {
      for (const auto& [y, t] : nontree_[x]) {
        ++counters_.nodes_visited;
        if (mark_[y] == stamp_) continue;
        if (depth_mark_[y] != stamp_) {
          depth_cache_[y] = forest_.find_root(y).depth;
          depth_mark_[y] = stamp_;
        }
        auto key = std::make_tuple(depth_cache_[y], forest_.id(y), forest_.id(x), t);
        if (!best || key < *best) {
          best = key;
          best_in = x;
          best_out = y;
        }
      }
    }
    if (!best) return;
    const Timestamp t = std::get<3>(*best);
    erase_nontree(best_in, best_out, t);
    forest_.re_root(best_in);
    forest_.link(best_in, best_out, t);
    last_replacement_ = StreamingEdge{forest_.id(best_in), forest_.id(best_out), t};
  }

  Forest forest_;
  std::vector<std::multiset<std::pair<Slot, Timestamp>>> nontree_;
  std::size_t nontree_count_ = 0;

  std::optional<StreamingEdge> last_replacement_;
  std::vector<std::uint64_t> mark_;
  std::vector<std::uint64_t> depth_mark_;
  std::vector<std::uint32_t> depth_cache_;
  std::vector<Slot> bfs_;
  std::uint64_t stamp_ = 0;
};

using VanillaDTree = DTree<DTreeVariant::kVanilla>;
using MstDTree = DTree<DTreeVariant::kMst>;
using OmstDTree = DTree<DTreeVariant::kOmst>;

}  // namespace swconn
