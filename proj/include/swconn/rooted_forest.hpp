#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "swconn/core.hpp"
#include "swconn/index.hpp"
#include "swconn/vertex_table.hpp"

namespace swconn {

/// Parent-pointer spanning forest. Every non-root vertex stores the weight of
/// the edge to its parent and the vertex count of its subtree. With
/// kChildren, explicit child lists are kept as well (needed for subtree
/// traversals); without, the structure is the minimal three-field record.
template <bool kChildren>
class RootedForest {
 public:
  struct Node {
    Slot parent = kNoSlot;
    Slot size = 1;
    Timestamp weight = 0;
  };

  struct RootInfo {
    Slot root = kNoSlot;
    std::uint32_t depth = 0;
  };

  explicit RootedForest(OperationCounters& counters) : counters_(&counters) {}

  Slot slot(VertexId v) const { return table_.find(v); }
  VertexId id(Slot s) const { return table_.id(s); }

  Slot ensure(VertexId v) {
    auto [s, fresh] = table_.intern(v);
    if (s >= nodes_.size()) {
      nodes_.resize(s + 1);
      if constexpr (kChildren) {
        children_.resize(s + 1);
        child_pos_.resize(s + 1, 0);
      }
    }
    if (fresh) nodes_[s] = Node{};
    return s;
  }

  const Node& node(Slot s) const { return nodes_[s]; }
  Slot parent(Slot s) const { return nodes_[s].parent; }
  Slot size(Slot s) const { return nodes_[s].size; }
  Timestamp weight(Slot s) const { return nodes_[s].weight; }
  bool is_root(Slot s) const { return nodes_[s].parent == kNoSlot; }

  const std::vector<Slot>& children(Slot s) const
    requires kChildren
  {
    return children_[s];
  }

  /// Root and hop distance; read-only.
  RootInfo find_root(Slot v) const {
    std::uint32_t depth = 0;
    while (nodes_[v].parent != kNoSlot) {
      v = nodes_[v].parent;
      ++depth;
    }
    counters_->nodes_visited += depth;
    return {v, depth};
  }

  /// The vertex on v's root path whose parent is the root, or kNoSlot when v
  /// is itself a root.
  Slot child_of_root(Slot v) const {
    if (nodes_[v].parent == kNoSlot) return kNoSlot;
    while (nodes_[nodes_[v].parent].parent != kNoSlot) v = nodes_[v].parent;
    return v;
  }

  Slot ancestor(Slot v, std::uint32_t hops) const {
    while (hops-- > 0) v = nodes_[v].parent;
    return v;
  }

  /// Makes v the root of its tree. The parent chain is reversed, each edge
  /// weight moves to its new child endpoint and sizes are rebuilt along the
  /// reversed path.
  void re_root(Slot v) {
    path_.clear();
    for (Slot x = v; x != kNoSlot; x = nodes_[x].parent) path_.push_back(x);
    const std::size_t k = path_.size() - 1;
    if (k == 0) return;
    counters_->reroots += 1;
    counters_->nodes_visited += k;

    sizes_.resize(path_.size());
    weights_.resize(path_.size());
    for (std::size_t i = 0; i <= k; ++i) {
      sizes_[i] = nodes_[path_[i]].size;
      weights_[i] = nodes_[path_[i]].weight;
    }
    if constexpr (kChildren) {
      // All detaches first: attaching overwrites the back-position a later
      // detach still needs.
      for (std::size_t i = 0; i < k; ++i) detach_child(path_[i + 1], path_[i]);
      for (std::size_t i = 0; i < k; ++i) attach_child(path_[i], path_[i + 1]);
    }
    nodes_[path_[k]].size = sizes_[k] - sizes_[k - 1];
    for (std::size_t i = k - 1; i >= 1; --i) {
      nodes_[path_[i]].size = sizes_[i] - sizes_[i - 1] + nodes_[path_[i + 1]].size;
    }
    nodes_[v].size = sizes_[k];
    for (std::size_t i = 0; i < k; ++i) {
      nodes_[path_[i + 1]].parent = path_[i];
      nodes_[path_[i + 1]].weight = weights_[i];
    }
    nodes_[v].parent = kNoSlot;
    nodes_[v].weight = 0;
  }

  /// Attaches the root child_root under parent with the given edge weight.
  void link(Slot child_root, Slot parent, Timestamp weight) {
    if (!is_root(child_root)) throw PreconditionError("link: child is not a root");
    Node& c = nodes_[child_root];
    c.parent = parent;
    c.weight = weight;
    for (Slot x = parent; x != kNoSlot; x = nodes_[x].parent) {
      nodes_[x].size += c.size;
      ++counters_->nodes_visited;
    }
    if constexpr (kChildren) attach_child(parent, child_root);
    tree_weight_ += weight;
    ++tree_edges_;
  }

  /// Detaches child from its parent; child becomes a root.
  void cut(Slot child) {
    Node& c = nodes_[child];
    if (c.parent == kNoSlot) throw PreconditionError("cut: vertex is a root");
    for (Slot x = c.parent; x != kNoSlot; x = nodes_[x].parent) {
      nodes_[x].size -= c.size;
      ++counters_->nodes_visited;
    }
    if constexpr (kChildren) detach_child(c.parent, child);
    tree_weight_ -= c.weight;
    --tree_edges_;
    c.parent = kNoSlot;
    c.weight = 0;
  }

  /// Child endpoint of the tree edge {a, b} with weight t, or kNoSlot.
  Slot tree_edge_child(Slot a, Slot b, Timestamp t) const {
    if (nodes_[a].parent == b && nodes_[a].weight == t) return a;
    if (nodes_[b].parent == a && nodes_[b].weight == t) return b;
    return kNoSlot;
  }

  /// Minimum-weight tree edge on the path u -> LCA -> v, returned as its
  /// child endpoint. Among equal minima the one met last when walking from u
  /// to v wins, which depends only on the path and not on where the root is.
  Slot min_on_path(Slot u, Slot v) const {
    RootInfo ru = find_root(u);
    RootInfo rv = find_root(v);
    if (ru.root != rv.root || u == v) {
      throw PreconditionError("min_on_path: endpoints must be distinct and connected");
    }
    Slot a = u, b = v;
    std::uint32_t da = ru.depth, db = rv.depth;
    Slot best_u = kNoSlot, best_v = kNoSlot;
    // u side, walked upward: later (higher) ties replace earlier ones.
    auto step_u = [&] {
      if (best_u == kNoSlot || nodes_[a].weight <= nodes_[best_u].weight) best_u = a;
      a = nodes_[a].parent;
      --da;
    };
    // v side, walked upward: the deepest among ties is the last met from u.
    auto step_v = [&] {
      if (best_v == kNoSlot || nodes_[b].weight < nodes_[best_v].weight) best_v = b;
      b = nodes_[b].parent;
      --db;
    };
    std::uint64_t hops = 0;
    while (da > db) step_u(), ++hops;
    while (db > da) step_v(), ++hops;
    while (a != b) step_u(), step_v(), hops += 2;
    counters_->nodes_visited += hops;
    if (best_v != kNoSlot && (best_u == kNoSlot || nodes_[best_v].weight <= nodes_[best_u].weight)) {
      return best_v;
    }
    return best_u;
  }

  std::size_t vertex_count() const { return table_.size(); }
  std::size_t tree_edge_count() const { return tree_edges_; }
  std::uint64_t tree_weight() const { return tree_weight_; }
  std::size_t slot_capacity() const { return nodes_.size(); }
  bool live(Slot s) const { return s < nodes_.size() && table_.live(s); }

  std::vector<TreeEdge> tree_edges() const {
    std::vector<TreeEdge> out;
    for (Slot s = 0; s < nodes_.size(); ++s) {
      if (live(s) && nodes_[s].parent != kNoSlot) {
        out.push_back({table_.id(s), table_.id(nodes_[s].parent), nodes_[s].weight});
      }
    }
    return out;
  }

  /// Releases isolated vertices (roots of single-vertex trees) for which
  /// keep(slot) is false. Returns the number released.
  std::size_t compact(const std::function<bool(Slot)>& keep = {}) {
    std::size_t released = 0;
    for (Slot s = 0; s < nodes_.size(); ++s) {
      if (!live(s) || nodes_[s].parent != kNoSlot || nodes_[s].size != 1) continue;
      if (keep && keep(s)) continue;
      table_.release(s);
      ++released;
    }
    return released;
  }

  std::size_t logical_bytes() const {
    std::size_t bytes = table_.logical_bytes() + table_.size() * sizeof(Node);
    if constexpr (kChildren) {
      // One list header and one back-position per vertex, one entry per child.
      bytes += table_.size() * (sizeof(std::vector<Slot>) + sizeof(Slot));
      bytes += tree_edges_ * sizeof(Slot);
    }
    return bytes;
  }

 private:
  void attach_child(Slot parent, Slot child)
    requires kChildren
  {
    child_pos_[child] = static_cast<Slot>(children_[parent].size());
    children_[parent].push_back(child);
  }

  void detach_child(Slot parent, Slot child)
    requires kChildren
  {
    auto& list = children_[parent];
    const Slot pos = child_pos_[child];
    const Slot moved = list.back();
    list[pos] = moved;
    child_pos_[moved] = pos;
    list.pop_back();
  }

  OperationCounters* counters_;
  VertexTable table_;
  std::vector<Node> nodes_;
  std::vector<std::vector<Slot>> children_;
  std::vector<Slot> child_pos_;
  std::uint64_t tree_weight_ = 0;
  std::size_t tree_edges_ = 0;

  // Scratch buffers for re_root.
  std::vector<Slot> path_;
  std::vector<Slot> sizes_;
  std::vector<Timestamp> weights_;
};

}  // namespace swconn
