#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "swconn/core.hpp"
#include "swconn/vertex_table.hpp"

namespace swconn {

/// Multigraph of the live window edges as symmetric adjacency lists.
/// Adjacency is kept in arrival order, so expirations, which arrive oldest
/// first, are found at the front.
class WindowGraph {
 public:
  using Entry = std::pair<Slot, Timestamp>;

  WindowGraph() = default;
  explicit WindowGraph(std::span<const StreamingEdge> edges) {
    for (const auto& e : edges) add(e);
  }

  void add(const StreamingEdge& e) {
    if (e.is_self_loop()) return;
    const Slot a = ensure(e.u);
    const Slot b = ensure(e.v);
    if (adj_[a].empty()) ++active_;
    adj_[a].push_back({b, e.t});
    if (adj_[b].empty()) ++active_;
    adj_[b].push_back({a, e.t});
    ++edge_count_;
  }

  /// Removes one copy of e. Returns false when no copy is live.
  bool remove(const StreamingEdge& e) {
    if (e.is_self_loop()) return true;
    const Slot a = table_.find(e.u);
    const Slot b = table_.find(e.v);
    if (a == kNoSlot || b == kNoSlot) return false;
    if (!erase_one(a, {b, e.t})) return false;
    erase_one(b, {a, e.t});
    --edge_count_;
    return true;
  }

  Slot slot(VertexId v) const { return table_.find(v); }
  VertexId id(Slot s) const { return table_.id(s); }
  std::size_t slot_capacity() const { return adj_.size(); }
  const std::deque<Entry>& neighbors(Slot s) const { return adj_[s]; }

  std::size_t edge_count() const { return edge_count_; }
  /// Vertices with at least one live edge.
  std::size_t vertex_count() const { return active_; }

  /// Every live edge once.
  std::vector<StreamingEdge> edges() const {
    std::vector<StreamingEdge> out;
    out.reserve(edge_count_);
    for (Slot s = 0; s < adj_.size(); ++s) {
      for (const auto& [o, t] : adj_[s]) {
        if (s < o) out.push_back({table_.id(s), table_.id(o), t});
      }
    }
    // A parallel pair contributes from both ends only once each; s < o keeps
    // every copy exactly once.
    return out;
  }

  std::size_t logical_bytes() const {
    std::size_t bytes = table_.logical_bytes() + adj_.size() * sizeof(std::deque<Entry>);
    return bytes + 2 * edge_count_ * sizeof(Entry);
  }

 private:
  Slot ensure(VertexId v) {
    const Slot s = table_.intern(v).first;
    if (s >= adj_.size()) adj_.resize(s + 1);
    return s;
  }

  bool erase_one(Slot s, Entry entry) {
    auto& list = adj_[s];
    auto it = std::find(list.begin(), list.end(), entry);
    if (it == list.end()) return false;
    list.erase(it);
    if (list.empty()) {
      // Free the slot so per-window scans stay proportional to the window.
      --active_;
      table_.release(s);
    }
    return true;
  }

  VertexTable table_;
  std::vector<std::deque<Entry>> adj_;
  std::size_t edge_count_ = 0;
  std::size_t active_ = 0;
};

/// Union by size with path compression over dense ids.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) { reset(n); }

  void reset(std::size_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0u);
    size_.assign(n, 1);
    components_ = n;
  }

  std::uint32_t find(std::uint32_t x) {
    std::uint32_t r = x;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[x] != r) {
      const std::uint32_t next = parent_[x];
      parent_[x] = r;
      x = next;
    }
    return r;
  }

  /// Returns true when two distinct sets were merged.
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  std::size_t size() const { return parent_.size(); }
  std::size_t components() const { return components_; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t components_ = 0;
};

/// Depth-first search with an explicit stack. The scratch buffers are reused
/// between calls; no connectivity information survives a call.
class DfsSearcher {
 public:
  bool connected(const WindowGraph& g, VertexId u, VertexId v) {
    if (u == v) return true;
    const Slot a = g.slot(u);
    const Slot b = g.slot(v);
    if (a == kNoSlot || b == kNoSlot) return false;
    if (g.neighbors(a).empty() || g.neighbors(b).empty()) return false;
    if (mark_.size() < g.slot_capacity()) mark_.resize(g.slot_capacity(), 0);
    ++stamp_;
    stack_.clear();
    stack_.push_back(a);
    mark_[a] = stamp_;
    while (!stack_.empty()) {
      const Slot x = stack_.back();
      stack_.pop_back();
      ++visited_;
      for (const auto& [y, t] : g.neighbors(x)) {
        if (y == b) return true;
        if (mark_[y] != stamp_) {
          mark_[y] = stamp_;
          stack_.push_back(y);
        }
      }
    }
    return false;
  }

  std::uint64_t visited() const { return visited_; }

 private:
  std::vector<std::uint64_t> mark_;
  std::vector<Slot> stack_;
  std::uint64_t stamp_ = 0;
  std::uint64_t visited_ = 0;
};

inline bool dfs_query(const WindowGraph& g, VertexId u, VertexId v) {
  DfsSearcher searcher;
  return searcher.connected(g, u, v);
}

/// Component representative per slot of the graph it was built from.
struct RwcLabeling {
  const WindowGraph* graph = nullptr;
  std::vector<std::uint32_t> component;
};

inline void rwc_rebuild(const WindowGraph& g, RwcLabeling& out, UnionFind& uf) {
  out.graph = &g;
  uf.reset(g.slot_capacity());
  for (Slot s = 0; s < g.slot_capacity(); ++s) {
    for (const auto& [o, t] : g.neighbors(s)) {
      if (s < o) uf.unite(s, o);
    }
  }
  out.component.resize(g.slot_capacity());
  for (Slot s = 0; s < g.slot_capacity(); ++s) out.component[s] = uf.find(s);
}

inline RwcLabeling rwc_rebuild(const WindowGraph& g) {
  RwcLabeling labels;
  UnionFind uf;
  rwc_rebuild(g, labels, uf);
  return labels;
}

/// Vertices absent from the window are isolated.
inline bool rwc_query(const RwcLabeling& labels, VertexId u, VertexId v) {
  if (u == v) return true;
  const Slot a = labels.graph->slot(u);
  const Slot b = labels.graph->slot(v);
  if (a == kNoSlot || b == kNoSlot || a >= labels.component.size() || b >= labels.component.size()) {
    return false;
  }
  return labels.component[a] == labels.component[b];
}

struct MaxForest {
  std::uint64_t total_weight = 0;
  std::vector<StreamingEdge> edges;
};

/// Kruskal on descending timestamps. Equal timestamps are taken in the order
/// given, so the witness forest is deterministic; the total is unique.
inline MaxForest kruskal_max_forest(std::span<const StreamingEdge> edges) {
  std::vector<StreamingEdge> sorted;
  sorted.reserve(edges.size());
  for (const auto& e : edges) {
    if (!e.is_self_loop()) sorted.push_back(e);
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const StreamingEdge& a, const StreamingEdge& b) { return a.t > b.t; });
  VertexTable table;
  for (const auto& e : sorted) {
    table.intern(e.u);
    table.intern(e.v);
  }
  UnionFind uf(table.capacity());
  MaxForest out;
  for (const auto& e : sorted) {
    if (uf.unite(table.find(e.u), table.find(e.v))) {
      out.total_weight += e.t;
      out.edges.push_back(e);
    }
  }
  return out;
}

inline MaxForest kruskal_max_forest(const WindowGraph& g) {
  const auto edges = g.edges();
  return kruskal_max_forest(std::span<const StreamingEdge>(edges));
}

}  // namespace swconn
