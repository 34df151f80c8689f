#pragma once

#include <span>
#include <utility>
#include <vector>

#include "swconn/core.hpp"
#include "swconn/vertex_table.hpp"
#include "swconn/window_graph.hpp"

namespace swconn {

using QueryPair = std::pair<VertexId, VertexId>;

/// Answers of one window: answers[k] is the verdict for pairs[k].
struct WindowAnswers {
  WindowSnapshot window;
  std::vector<bool> answers;
  friend bool operator==(const WindowAnswers&, const WindowAnswers&) = default;
};

/// Live-edge multiset of window w: every edge with t_b <= t <= t_e.
inline std::vector<StreamingEdge> window_edges(const WindowSnapshot& w,
                                               std::span<const StreamingEdge> stream) {
  std::vector<StreamingEdge> out;
  for (const auto& e : stream) {
    if (w.contains(e.t) && !e.is_self_loop()) out.push_back(e);
  }
  return out;
}

/// Number of windows a replay visits: from w_0 until the window whose t_b
/// passes the last timestamp. Edges before t0 never enter a window.
inline std::uint64_t replay_window_count(const WindowConfig& config,
                                         std::span<const StreamingEdge> stream) {
  Timestamp max_t = 0;
  bool any = false;
  for (const auto& e : stream) {
    if (e.t >= config.t0) {
      max_t = std::max(max_t, e.t);
      any = true;
    }
  }
  return any ? window_count(config, max_t) : 0;
}

/// Ground truth: recomputes each window from scratch with union-find.
inline std::vector<WindowAnswers> replay_oracle(std::span<const StreamingEdge> stream,
                                                const WindowConfig& config,
                                                std::span<const QueryPair> pairs) {
  config.validate();
  const std::uint64_t windows = replay_window_count(config, stream);
  std::vector<WindowAnswers> out;
  out.reserve(windows);
  // The stream is sorted, so each window is a contiguous range.
  std::size_t lo = 0, hi = 0;
  for (std::uint64_t i = 0; i < windows; ++i) {
    const WindowSnapshot w = window_bounds(config, i);
    while (lo < stream.size() && stream[lo].t < w.t_b) ++lo;
    hi = std::max(hi, lo);
    while (hi < stream.size() && stream[hi].t <= w.t_e) ++hi;

    VertexTable table;
    for (std::size_t k = lo; k < hi; ++k) {
      table.intern(stream[k].u);
      table.intern(stream[k].v);
    }
    UnionFind uf(table.capacity());
    for (std::size_t k = lo; k < hi; ++k) uf.unite(table.find(stream[k].u), table.find(stream[k].v));

    WindowAnswers row{w, {}};
    row.answers.reserve(pairs.size());
    for (const auto& [u, v] : pairs) {
      if (u == v) {
        row.answers.push_back(true);
        continue;
      }
      const Slot a = table.find(u);
      const Slot b = table.find(v);
      row.answers.push_back(a != kNoSlot && b != kNoSlot && uf.find(a) == uf.find(b));
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace swconn
