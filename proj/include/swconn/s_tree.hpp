#pragma once

#include <string_view>
#include <vector>

#include "swconn/index.hpp"
#include "swconn/rooted_forest.hpp"

namespace swconn {

/// OMST S-Tree: a maximum spanning forest (timestamps as weights) kept as
/// plain parent links. Non-tree edges are never stored and expiring tree
/// edges are cut without looking for a replacement.
class OmstSTree final : public ConnectivityIndex {
 public:
  OmstSTree() : forest_(counters_) {}

  std::string_view name() const override { return "omst-s"; }

  /// Root of v's tree and v's distance to it. Unknown vertices are isolated.
  std::pair<VertexId, std::uint32_t> find_root(VertexId v) const {
    const Slot s = forest_.slot(v);
    if (s == kNoSlot) return {v, 0};
    auto info = forest_.find_root(s);
    return {forest_.id(info.root), info.depth};
  }

  bool query(VertexId u, VertexId v) override {
    if (u == v) return true;
    const Slot a = forest_.slot(u);
    const Slot b = forest_.slot(v);
    if (a == kNoSlot || b == kNoSlot) return false;
    return forest_.find_root(a).root == forest_.find_root(b).root;
  }

  void re_root(VertexId v) {
    const Slot s = forest_.slot(v);
    if (s != kNoSlot) forest_.re_root(s);
  }

  /// Structural primitive: makes child's tree hang below parent through an
  /// edge of the given weight. child is re-rooted first.
  void link(VertexId child, VertexId parent, Timestamp weight) {
    const Slot c = forest_.ensure(child);
    const Slot p = forest_.ensure(parent);
    if (forest_.find_root(c).root == forest_.find_root(p).root) {
      throw PreconditionError("link: endpoints already connected");
    }
    forest_.re_root(c);
    forest_.link(c, p, weight);
  }

  /// Minimum tree edge on the cycle that (u, v) would close.
  TreeEdge find_min_in_cycle(VertexId u, VertexId v) const {
    const Slot a = forest_.slot(u);
    const Slot b = forest_.slot(v);
    if (a == kNoSlot || b == kNoSlot) throw PreconditionError("find_min_in_cycle: unknown vertex");
    const Slot c = forest_.min_on_path(a, b);
    return {forest_.id(c), forest_.id(forest_.parent(c)), forest_.weight(c)};
  }

  void insert(const StreamingEdge& e) override {
    if (e.is_self_loop()) return;
    const Slot a = forest_.ensure(e.u);
    const Slot b = forest_.ensure(e.v);
    auto ra = forest_.find_root(a);
    auto rb = forest_.find_root(b);
    if (ra.root != rb.root) {
      link_smaller_into_larger(a, ra.root, b, rb.root, e.t);
      return;
    }
    const Slot min_child = forest_.min_on_path(a, b);
    if (forest_.weight(min_child) >= e.t) return;  // e would be a non-tree edge: discard
    forest_.cut(min_child);
    ra = forest_.find_root(a);
    rb = forest_.find_root(b);
    link_smaller_into_larger(a, ra.root, b, rb.root, e.t);
  }

  void remove(const StreamingEdge& e) override {
    const Slot a = forest_.slot(e.u);
    const Slot b = forest_.slot(e.v);
    if (a == kNoSlot || b == kNoSlot || a == b) return;
    const Slot child = forest_.tree_edge_child(a, b, e.t);
    if (child != kNoSlot) forest_.cut(child);
  }

  bool is_tree_edge(const StreamingEdge& e) const {
    const Slot a = forest_.slot(e.u);
    const Slot b = forest_.slot(e.v);
    return a != kNoSlot && b != kNoSlot && a != b && forest_.tree_edge_child(a, b, e.t) != kNoSlot;
  }

  /// Drops vertices left isolated by expirations. Not run automatically.
  std::size_t compact() { return forest_.compact(); }

  std::size_t tree_edge_count() const override { return forest_.tree_edge_count(); }
  std::size_t non_tree_edge_count() const override { return 0; }
  std::size_t vertex_count() const override { return forest_.vertex_count(); }
  std::uint64_t tree_weight() const override { return forest_.tree_weight(); }
  std::vector<TreeEdge> tree_edges() const { return forest_.tree_edges(); }

  MemoryFootprint memory() const override {
    return {forest_.vertex_count(), forest_.tree_edge_count(), 0, forest_.logical_bytes()};
  }

  const RootedForest<false>& forest() const { return forest_; }

 private:
  // Re-roots the smaller tree at its endpoint and hangs it below the other
  // endpoint. On equal sizes the tree of a goes below b.
  void link_smaller_into_larger(Slot a, Slot root_a, Slot b, Slot root_b, Timestamp t) {
    if (forest_.size(root_a) <= forest_.size(root_b)) {
      forest_.re_root(a);
      forest_.link(a, b, t);
    } else {
      forest_.re_root(b);
      forest_.link(b, a, t);
    }
  }

  RootedForest<false> forest_;
};

}  // namespace swconn
