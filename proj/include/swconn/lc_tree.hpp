#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "swconn/index.hpp"
#include "swconn/vertex_table.hpp"

namespace swconn {

/// Link-cut forest over splay trees with edges represented as their own
/// nodes. A vertex node carries no weight; an edge node carries its
/// timestamp. Each auxiliary tree keeps the leftmost and the rightmost
/// minimum edge of its subtree so a path minimum can be read with either tie
/// orientation, and re-rooting is a lazy flip.
class LinkCutForest {
 public:
  using NodeId = std::uint32_t;
  static constexpr NodeId kNil = std::numeric_limits<NodeId>::max();
  static constexpr Timestamp kNoWeight = std::numeric_limits<Timestamp>::max();

  struct Node {
    NodeId left = kNil;
    NodeId right = kNil;
    NodeId parent = kNil;  // auxiliary parent, or path-parent at an aux root
    bool flipped = false;  // children still need swapping
    bool is_edge = false;
    Timestamp weight = kNoWeight;
    NodeId lmin = kNil;  // leftmost minimum edge node in the aux subtree
    NodeId rmin = kNil;  // rightmost minimum edge node in the aux subtree
    NodeId end_a = kNil, end_b = kNil;  // endpoints, edge nodes only
  };

  explicit LinkCutForest(OperationCounters& counters) : counters_(&counters) {}

  NodeId make_vertex() { return allocate(false, kNoWeight); }

  const Node& node(NodeId x) const { return nodes_[x]; }
  std::size_t node_count() const { return nodes_.size() - free_.size(); }

  bool is_aux_root(NodeId x) const {
    const NodeId p = nodes_[x].parent;
    return p == kNil || (nodes_[p].left != x && nodes_[p].right != x);
  }

  /// Makes the root-to-x path preferred and x the root of its aux tree.
  /// Returns the last node where the walk switched paths; after access(u),
  /// access(v) returns the lowest common ancestor of u and v. When
  /// detached is given it receives x's former deeper path segment.
  NodeId access(NodeId x, NodeId* detached = nullptr) {
    ++counters_->accesses;
    NodeId last = kNil;
    bool first = true;
    for (NodeId y = x; y != kNil; y = nodes_[y].parent) {
      splay(y);
      if (first && detached) *detached = nodes_[y].right;
      first = false;
      nodes_[y].right = last;
      pull(y);
      last = y;
    }
    splay(x);
    return last;
  }

  void evert(NodeId x) {
    access(x);
    flip(x);
  }

  /// Vertex with minimum depth on x's root path.
  NodeId find_root(NodeId x) {
    access(x);
    NodeId r = x;
    push(r);
    while (nodes_[r].left != kNil) {
      r = nodes_[r].left;
      push(r);
      ++counters_->nodes_visited;
    }
    splay(r);
    return r;
  }

  /// Node just above x on its root path (the edge node to x's parent), or
  /// kNil when x is a root.
  NodeId predecessor(NodeId x) {
    access(x);
    NodeId p = nodes_[x].left;
    if (p == kNil) return kNil;
    push(p);
    while (nodes_[p].right != kNil) {
      p = nodes_[p].right;
      push(p);
    }
    splay(p);
    return p;
  }

  /// Attaches a tree root (after evert) below parent.
  void attach(NodeId root, NodeId parent) {
    evert(root);
    nodes_[root].parent = parent;
  }

  /// Removes the adjacency between a and b; they must be adjacent.
  void detach(NodeId a, NodeId b) {
    evert(a);
    access(b);
    push(b);
    const NodeId l = nodes_[b].left;
    if (l != a || nodes_[a].right != kNil) {
      throw PreconditionError("detach: nodes are not adjacent");
    }
    nodes_[b].left = kNil;
    nodes_[a].parent = kNil;
    pull(b);
  }

  NodeId add_edge(NodeId a, NodeId b, Timestamp w) {
    const NodeId e = allocate(true, w);
    nodes_[e].end_a = a;
    nodes_[e].end_b = b;
    attach(a, e);
    attach(e, b);
    return e;
  }

  void remove_edge(NodeId e) {
    const NodeId a = nodes_[e].end_a;
    const NodeId b = nodes_[e].end_b;
    detach(a, e);
    detach(e, b);
    free_.push_back(e);
    nodes_[e] = Node{};
  }

  /// Aggregated (leftmost, rightmost) minimum edge of the aux subtree at x,
  /// in x's true orientation.
  std::pair<NodeId, NodeId> aggregate(NodeId x) const { return {nodes_[x].lmin, nodes_[x].rmin}; }

  Timestamp weight_of(NodeId edge) const { return edge == kNil ? kNoWeight : nodes_[edge].weight; }

  /// Recomputes every aggregate bottom-up and compares with the stored ones.
  bool aggregates_consistent() const {
    std::vector<bool> unused(nodes_.size(), false);
    for (NodeId f : free_) unused[f] = true;
    for (NodeId x = 0; x < nodes_.size(); ++x) {
      if (unused[x]) continue;
      if (!is_aux_root(x)) continue;
      NodeId l, r;
      if (!check(x, false, l, r)) return false;
    }
    return true;
  }

  /// In-order sequence of x's aux tree, resolving pending flips.
  void in_order(NodeId root, std::vector<NodeId>& out) const { collect(root, false, out); }

  std::size_t logical_bytes() const { return node_count() * sizeof(Node); }

 private:
  NodeId allocate(bool is_edge, Timestamp w) {
    NodeId x;
    if (!free_.empty()) {
      x = free_.back();
      free_.pop_back();
    } else {
      x = static_cast<NodeId>(nodes_.size());
      nodes_.emplace_back();
    }
    Node& n = nodes_[x];
    n = Node{};
    n.is_edge = is_edge;
    n.weight = w;
    n.lmin = n.rmin = is_edge ? x : kNil;
    return x;
  }

  void flip(NodeId x) {
    Node& n = nodes_[x];
    std::swap(n.left, n.right);
    std::swap(n.lmin, n.rmin);
    n.flipped = !n.flipped;
  }

  void push(NodeId x) {
    Node& n = nodes_[x];
    if (!n.flipped) return;
    if (n.left != kNil) flip(n.left);
    if (n.right != kNil) flip(n.right);
    n.flipped = false;
  }

  // Leftmost-minimum keeps the earlier candidate on ties, rightmost-minimum
  // the later one.
  NodeId pick_left(NodeId a, NodeId b) const {
    if (a == kNil) return b;
    if (b == kNil) return a;
    return nodes_[b].weight < nodes_[a].weight ? b : a;
  }
  NodeId pick_right(NodeId a, NodeId b) const {
    if (a == kNil) return b;
    if (b == kNil) return a;
    return nodes_[b].weight <= nodes_[a].weight ? b : a;
  }

  void pull(NodeId x) {
    Node& n = nodes_[x];
    const NodeId self = n.is_edge ? x : kNil;
    const NodeId ll = n.left == kNil ? kNil : nodes_[n.left].lmin;
    const NodeId lr = n.left == kNil ? kNil : nodes_[n.left].rmin;
    const NodeId rl = n.right == kNil ? kNil : nodes_[n.right].lmin;
    const NodeId rr = n.right == kNil ? kNil : nodes_[n.right].rmin;
    n.lmin = pick_left(pick_left(ll, self), rl);
    n.rmin = pick_right(pick_right(lr, self), rr);
  }

  void rotate(NodeId x) {
    const NodeId p = nodes_[x].parent;
    const NodeId g = nodes_[p].parent;
    const bool p_is_root = is_aux_root(p);
    if (nodes_[p].left == x) {
      nodes_[p].left = nodes_[x].right;
      if (nodes_[x].right != kNil) nodes_[nodes_[x].right].parent = p;
      nodes_[x].right = p;
    } else {
      nodes_[p].right = nodes_[x].left;
      if (nodes_[x].left != kNil) nodes_[nodes_[x].left].parent = p;
      nodes_[x].left = p;
    }
    nodes_[p].parent = x;
    nodes_[x].parent = g;
    if (!p_is_root) {
      if (nodes_[g].left == p) {
        nodes_[g].left = x;
      } else {
        nodes_[g].right = x;
      }
    }
    pull(p);
    pull(x);
    ++counters_->nodes_visited;
  }

  void splay(NodeId x) {
    // Resolve pending flips from the aux root down to x.
    stack_.clear();
    for (NodeId y = x;; y = nodes_[y].parent) {
      stack_.push_back(y);
      if (is_aux_root(y)) break;
    }
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) push(*it);

    while (!is_aux_root(x)) {
      const NodeId p = nodes_[x].parent;
      if (!is_aux_root(p)) {
        const NodeId g = nodes_[p].parent;
        const bool zigzig = (nodes_[g].left == p) == (nodes_[p].left == x);
        rotate(zigzig ? p : x);
      }
      rotate(x);
    }
  }

  // A node's stored children and aggregates are in its true orientation only
  // when no ancestor in its aux tree still owes it a flip; flip_pending
  // carries that debt down the recursion.
  bool check(NodeId x, bool flip_pending, NodeId& lmin, NodeId& rmin) const {
    const Node& n = nodes_[x];
    NodeId left = n.left, right = n.right;
    NodeId stored_l = n.lmin, stored_r = n.rmin;
    if (flip_pending) {
      std::swap(left, right);
      std::swap(stored_l, stored_r);
    }
    const bool child_flip = flip_pending != n.flipped;
    NodeId ll = kNil, lr = kNil, rl = kNil, rr = kNil;
    if (left != kNil && !check(left, child_flip, ll, lr)) return false;
    if (right != kNil && !check(right, child_flip, rl, rr)) return false;
    const NodeId self = n.is_edge ? x : kNil;
    lmin = pick_left(pick_left(ll, self), rl);
    rmin = pick_right(pick_right(lr, self), rr);
    return lmin == stored_l && rmin == stored_r;
  }

  void collect(NodeId x, bool flip_pending, std::vector<NodeId>& out) const {
    if (x == kNil) return;
    const Node& n = nodes_[x];
    NodeId left = n.left, right = n.right;
    if (flip_pending) std::swap(left, right);
    const bool child_flip = flip_pending != n.flipped;
    collect(left, child_flip, out);
    out.push_back(x);
    collect(right, child_flip, out);
  }

  OperationCounters* counters_;
  std::vector<Node> nodes_;
  std::vector<NodeId> free_;
  std::vector<NodeId> stack_;
};

/// OMST LC-Tree: the maximum spanning forest held in a link-cut forest.
/// Connectivity is decided from two accesses and a pointer check, the cycle
/// minimum from access return values and path aggregates.
class OmstLcTree final : public ConnectivityIndex {
 public:
  using NodeId = LinkCutForest::NodeId;

  OmstLcTree() : lct_(counters_) {}

  std::string_view name() const override { return "omst-lc"; }

  /// access(v) on a registered vertex; returns the switch-point vertex.
  VertexId access(VertexId v) {
    const NodeId x = vertex_node(v);
    return id_of(lct_.access(x));
  }

  bool query(VertexId u, VertexId v) override {
    if (u == v) return true;
    const NodeId a = vertex_node(u);
    const NodeId b = vertex_node(v);
    if (a == LinkCutForest::kNil || b == LinkCutForest::kNil) return false;
    return connected_after_access(a, b);
  }

  VertexId find_root(VertexId v) {
    const NodeId x = vertex_node(v);
    if (x == LinkCutForest::kNil) return v;
    return id_of(lct_.find_root(x));
  }

  void re_root(VertexId v) {
    const NodeId x = vertex_node(v);
    if (x != LinkCutForest::kNil) lct_.evert(x);
  }

  /// Hangs child's tree (re-rooted at child) below parent through an edge of
  /// the given weight.
  void link(VertexId child, VertexId parent, Timestamp weight) {
    const NodeId c = ensure(child);
    const NodeId p = ensure(parent);
    if (c == p || lct_.find_root(c) == lct_.find_root(p)) {
      throw PreconditionError("link: endpoints already connected");
    }
    add_tree_edge(c, p, weight);
  }

  /// Removes the tree edge between v and its parent in the current rooting.
  void cut(VertexId v) {
    const NodeId x = vertex_node(v);
    if (x == LinkCutForest::kNil) throw PreconditionError("cut: unknown vertex");
    const NodeId edge = lct_.predecessor(x);
    if (edge == LinkCutForest::kNil) throw PreconditionError("cut: vertex is a root");
    remove_tree_edge(edge);
  }

  /// Minimum edge on the path from u up to its ancestor lca.
  TreeEdge path_min(VertexId u, VertexId lca) {
    const NodeId a = vertex_node(u);
    const NodeId l = vertex_node(lca);
    if (a == LinkCutForest::kNil || l == LinkCutForest::kNil || a == l) {
      throw PreconditionError("path_min: need a proper ancestor");
    }
    auto [left_min, right_min] = segment_min(a, l);
    (void)right_min;
    if (left_min == LinkCutForest::kNil) throw PreconditionError("path_min: lca is not an ancestor");
    return edge_of(left_min);
  }

  void insert(const StreamingEdge& e) override {
    if (e.is_self_loop()) return;
    const NodeId a = ensure(e.u);
    const NodeId b = ensure(e.v);
    lct_.access(a);
    const NodeId lca = lct_.access(b);
    if (!still_on_path(a, b)) {
      add_tree_edge(a, b, e.t);
      return;
    }
    // Walking u -> v, ties go to the last minimum met: on the u side that is
    // the edge nearest the lca, on the v side the one nearest v.
    NodeId best = LinkCutForest::kNil;
    if (a != lca) best = segment_min(a, lca).first;
    if (b != lca) {
      const NodeId v_side = segment_min(b, lca).second;
      if (best == LinkCutForest::kNil || lct_.weight_of(v_side) <= lct_.weight_of(best)) best = v_side;
    }
    if (lct_.weight_of(best) >= e.t) return;
    remove_tree_edge(best);
    add_tree_edge(a, b, e.t);
  }

  void remove(const StreamingEdge& e) override {
    if (e.is_self_loop()) return;
    const Slot a = table_.find(e.u);
    const Slot b = table_.find(e.v);
    if (a == kNoSlot || b == kNoSlot) return;
    auto it = edges_.find(pair_key(a, b));
    if (it == edges_.end() || lct_.node(it->second).weight != e.t) return;
    remove_tree_edge(it->second);
  }

  bool is_tree_edge(const StreamingEdge& e) const {
    const Slot a = table_.find(e.u);
    const Slot b = table_.find(e.v);
    if (a == kNoSlot || b == kNoSlot) return false;
    auto it = edges_.find(pair_key(a, b));
    return it != edges_.end() && lct_.node(it->second).weight == e.t;
  }

  /// Tree edges as unordered (u, v, t) with u < v.
  std::vector<StreamingEdge> tree_edge_set() const {
    std::vector<StreamingEdge> out;
    out.reserve(edges_.size());
    for (const auto& [key, node] : edges_) {
      VertexId x = table_.id(static_cast<Slot>(key >> 32));
      VertexId y = table_.id(static_cast<Slot>(key & 0xffffffffu));
      if (x > y) std::swap(x, y);
      out.push_back({x, y, lct_.node(node).weight});
    }
    return out;
  }

  bool aggregates_consistent() const { return lct_.aggregates_consistent(); }
  const LinkCutForest& forest() const { return lct_; }

  std::size_t tree_edge_count() const override { return edges_.size(); }
  std::size_t non_tree_edge_count() const override { return 0; }
  std::size_t vertex_count() const override { return table_.size(); }
  std::uint64_t tree_weight() const override { return tree_weight_; }

  MemoryFootprint memory() const override {
    constexpr std::size_t kEdgeEntry = sizeof(std::uint64_t) + sizeof(NodeId) + sizeof(void*) + sizeof(std::size_t);
    const std::size_t bytes = table_.logical_bytes() + vertex_nodes_.size() * sizeof(NodeId) +
                              lct_.logical_bytes() + edges_.size() * kEdgeEntry +
                              edges_.bucket_count() * sizeof(void*);
    return {table_.size(), edges_.size(), 0, bytes};
  }

 private:
  static std::uint64_t pair_key(Slot a, Slot b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  NodeId vertex_node(VertexId v) const {
    const Slot s = table_.find(v);
    return s == kNoSlot ? LinkCutForest::kNil : vertex_nodes_[s];
  }

  NodeId ensure(VertexId v) {
    auto [s, fresh] = table_.intern(v);
    if (s >= vertex_nodes_.size()) vertex_nodes_.resize(s + 1, LinkCutForest::kNil);
    if (fresh) {
      vertex_nodes_[s] = lct_.make_vertex();
      if (node_vertex_.size() <= vertex_nodes_[s]) node_vertex_.resize(vertex_nodes_[s] + 1, kNoSlot);
      node_vertex_[vertex_nodes_[s]] = s;
    }
    return vertex_nodes_[s];
  }

  VertexId id_of(NodeId x) const { return table_.id(node_vertex_[x]); }

  // Verdict after access(a), access(b): a stays an aux root without a
  // path-parent exactly when b lives in another tree.
  bool connected_after_access(NodeId a, NodeId b) {
    lct_.access(a);
    lct_.access(b);
    return still_on_path(a, b);
  }

  bool still_on_path(NodeId a, NodeId b) const { return a == b || lct_.node(a).parent != LinkCutForest::kNil; }

  // access(x) then access(ancestor); the segment cut off below the ancestor
  // is exactly the path ancestor -> x. Returns its (leftmost, rightmost)
  // minimum edge, leftmost being nearest the ancestor.
  std::pair<NodeId, NodeId> segment_min(NodeId x, NodeId ancestor) {
    lct_.access(x);
    NodeId segment = LinkCutForest::kNil;
    lct_.access(ancestor, &segment);
    if (segment == LinkCutForest::kNil) return {LinkCutForest::kNil, LinkCutForest::kNil};
    return lct_.aggregate(segment);
  }

  void add_tree_edge(NodeId a, NodeId b, Timestamp t) {
    const NodeId e = lct_.add_edge(a, b, t);
    edges_[pair_key(node_vertex_[a], node_vertex_[b])] = e;
    tree_weight_ += t;
  }

  void remove_tree_edge(NodeId e) {
    const auto& n = lct_.node(e);
    const std::uint64_t key = pair_key(node_vertex_[n.end_a], node_vertex_[n.end_b]);
    tree_weight_ -= n.weight;
    edges_.erase(key);
    lct_.remove_edge(e);
  }

  TreeEdge edge_of(NodeId e) const {
    const auto& n = lct_.node(e);
    return {id_of(n.end_a), id_of(n.end_b), n.weight};
  }

  LinkCutForest lct_;
  VertexTable table_;
  std::vector<NodeId> vertex_nodes_;  // slot -> vertex node
  std::vector<Slot> node_vertex_;     // vertex node -> slot
  std::unordered_map<std::uint64_t, NodeId> edges_;
  std::uint64_t tree_weight_ = 0;
};

}  // namespace swconn
