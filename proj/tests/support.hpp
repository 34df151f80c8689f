#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "swconn/swconn.hpp"

namespace swconn::testing {

/// Vertex ids of the running example: letter - 'A'.
constexpr VertexId V(char c) { return static_cast<VertexId>(c - 'A'); }

inline StreamingEdge E(char u, char v, Timestamp t) { return {V(u), V(v), t}; }

/// Edges of the running example window w7 (timestamps 7..11), arrival order.
inline std::vector<StreamingEdge> running_w7() {
  return {E('B', 'D', 7), E('A', 'D', 7), E('E', 'F', 7), E('B', 'C', 8), E('E', 'C', 9),
          E('D', 'F', 9), E('A', 'C', 10), E('A', 'H', 11), E('H', 'I', 11), E('G', 'I', 11)};
}

/// Arrivals at t12, in order.
inline std::vector<StreamingEdge> running_t12() {
  return {E('A', 'I', 12), E('K', 'B', 12), E('H', 'D', 12), E('D', 'C', 12)};
}

inline std::vector<StreamingEdge> running_stream() {
  auto s = running_w7();
  for (const auto& e : running_t12()) s.push_back(e);
  return s;
}

/// alpha = 5, beta = 1, time origin 1: window index 6 spans t7..t11.
inline WindowConfig running_config() { return {5, 1, 1}; }

/// The w8 spanning tree rooted at B, built edge by edge with link().
template <typename Index>
void build_w8_tree(Index& index) {
  index.link(V('K'), V('B'), 12);
  index.link(V('C'), V('B'), 8);
  index.link(V('E'), V('C'), 9);
  index.link(V('D'), V('C'), 12);
  index.link(V('F'), V('D'), 9);
  index.link(V('H'), V('D'), 12);
  index.link(V('A'), V('H'), 11);
  index.link(V('I'), V('A'), 12);
  index.link(V('G'), V('I'), 11);
}

struct RandomStream {
  std::vector<StreamingEdge> edges;
  WindowConfig config;
  std::uint64_t vertices = 0;
};

/// Random sorted stream with a random window configuration (alpha >= beta).
/// Timestamp span and slide are drawn so a replay has a bounded number of
/// windows.
inline RandomStream random_stream(std::uint64_t seed, std::uint64_t max_vertices, std::size_t max_edges) {
  Rng rng(seed);
  RandomStream out;
  out.vertices = rng.between(2, max_vertices);
  const std::size_t m = rng.between(1, max_edges);
  const Timestamp span = rng.between(1, 2000);
  const Timestamp beta = rng.between(std::max<Timestamp>(1, span / 150), std::max<Timestamp>(1, span / 20));
  const Timestamp alpha = beta * rng.between(1, 12) + rng.below(beta);
  out.config = {alpha, beta, rng.below(3)};
  std::vector<Timestamp> times(m);
  for (auto& t : times) t = rng.below(span);
  std::sort(times.begin(), times.end());
  out.edges.reserve(m);
  for (Timestamp t : times) {
    // Occasional self-loops exercise the drop path.
    const VertexId u = rng.below(out.vertices);
    const VertexId v = rng.below(50) == 0 ? u : rng.below(out.vertices);
    out.edges.push_back({u, v, t});
  }
  return out;
}

inline std::vector<VertexId> iota_universe(std::uint64_t n) {
  std::vector<VertexId> out(n);
  for (std::uint64_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

/// Recounts every subtree and checks parent/child consistency. Returns an
/// empty string when the forest is well formed.
template <bool kChildren>
std::string forest_defect(const RootedForest<kChildren>& f) {
  const std::size_t n = f.slot_capacity();
  std::vector<std::uint64_t> recount(n, 0);
  for (Slot s = 0; s < n; ++s) {
    if (!f.live(s)) continue;
    std::size_t hops = 0;
    for (Slot x = s; x != kNoSlot; x = f.parent(x)) {
      if (!f.live(x)) return "parent chain reaches a released slot";
      ++recount[x];
      if (++hops > n) return "cycle in parent links";
    }
  }
  for (Slot s = 0; s < n; ++s) {
    if (!f.live(s)) continue;
    if (recount[s] != f.size(s)) {
      return "size mismatch at " + std::to_string(f.id(s)) + ": stored " + std::to_string(f.size(s)) +
             ", counted " + std::to_string(recount[s]);
    }
    if constexpr (kChildren) {
      for (Slot c : f.children(s)) {
        if (f.parent(c) != s) return "child list disagrees with parent link";
      }
      if (f.parent(s) != kNoSlot) {
        const auto& siblings = f.children(f.parent(s));
        if (std::find(siblings.begin(), siblings.end(), s) == siblings.end()) {
          return "vertex missing from its parent's child list";
        }
      }
    }
  }
  return {};
}

/// Tree path between two vertices of a parent-linked forest, as child
/// endpoints ordered from u to v. Empty when disconnected.
template <bool kChildren>
std::vector<Slot> tree_path(const RootedForest<kChildren>& f, Slot u, Slot v) {
  std::vector<Slot> up_u, up_v;
  for (Slot x = u; x != kNoSlot; x = f.parent(x)) up_u.push_back(x);
  for (Slot x = v; x != kNoSlot; x = f.parent(x)) up_v.push_back(x);
  if (up_u.back() != up_v.back()) return {};
  while (up_u.size() > 1 && up_v.size() > 1 && up_u[up_u.size() - 2] == up_v[up_v.size() - 2]) {
    up_u.pop_back();
    up_v.pop_back();
  }
  up_u.pop_back();  // the lca
  up_v.pop_back();
  std::vector<Slot> path = up_u;  // u side, bottom-up
  path.insert(path.end(), up_v.rbegin(), up_v.rend());  // v side, top-down
  return path;
}

/// Canonical (min id, max id, t) form, sorted, for edge-set comparison.
inline std::vector<StreamingEdge> canonical(std::vector<StreamingEdge> edges) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const StreamingEdge& a, const StreamingEdge& b) {
    return std::tie(a.u, a.v, a.t) < std::tie(b.u, b.v, b.t);
  });
  return edges;
}

inline std::vector<StreamingEdge> canonical(const std::vector<TreeEdge>& edges) {
  std::vector<StreamingEdge> out;
  for (const auto& e : edges) out.push_back(e.as_edge());
  return canonical(std::move(out));
}

}  // namespace swconn::testing
