#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swconn {

using VertexId = std::uint64_t;
using Timestamp = std::uint64_t;

/// Undirected timestamped edge. (u, v, t) and (v, u, t) denote the same edge.
struct StreamingEdge {
  VertexId u = 0;
  VertexId v = 0;
  Timestamp t = 0;

  bool is_self_loop() const { return u == v; }

  friend bool operator==(const StreamingEdge& a, const StreamingEdge& b) {
    return a.t == b.t && ((a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u));
  }
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a stream or input file violates the arrival-order contract.
class StreamOrderError : public std::runtime_error {
 public:
  StreamOrderError(std::size_t position, const std::string& what)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct WindowConfig {
  Timestamp alpha = 1;  // window size in time units
  Timestamp beta = 1;   // slide in time units
  Timestamp t0 = 0;     // origin of the first window

  void validate() const {
    if (beta < 1 || alpha < beta) {
      throw std::invalid_argument("window config requires alpha >= beta >= 1");
    }
  }
};

/// Inclusive bounds: t_e - t_b + 1 == alpha.
struct WindowSnapshot {
  std::uint64_t index = 0;
  Timestamp t_b = 0;
  Timestamp t_e = 0;

  bool contains(Timestamp t) const { return t_b <= t && t <= t_e; }
  friend bool operator==(const WindowSnapshot&, const WindowSnapshot&) = default;
};

inline WindowSnapshot window_bounds(const WindowConfig& config, std::uint64_t i) {
  const Timestamp t_b = config.t0 + i * config.beta;
  return {i, t_b, t_b + config.alpha - 1};
}

/// First timestamp that survives the w_i -> w_{i+1} transition.
inline Timestamp expiry_horizon(const WindowConfig& config, const WindowSnapshot& w) {
  return w.t_b + config.beta;
}

/// Edges of w_i that leave the window at the w_i -> w_{i+1} transition:
/// exactly {e | w.t_b <= e.t < w.t_b + beta}.
inline std::vector<StreamingEdge> expired_edges(const WindowConfig& config,
                                                const WindowSnapshot& w,
                                                std::span<const StreamingEdge> edges) {
  std::vector<StreamingEdge> out;
  const Timestamp horizon = expiry_horizon(config, w);
  for (const auto& e : edges) {
    if (w.t_b <= e.t && e.t < horizon) out.push_back(e);
  }
  return out;
}

/// Index of the first edge whose timestamp is smaller than its predecessor's.
inline std::optional<std::size_t> stream_validate(std::span<const StreamingEdge> edges) {
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].t < edges[i - 1].t) return i;
  }
  return std::nullopt;
}

/// Number of snapshots a replay of a stream with maximum timestamp max_t
/// produces: every window whose t_b <= max_t, starting at index 0.
inline std::uint64_t window_count(const WindowConfig& config, Timestamp max_t) {
  if (max_t < config.t0) return 0;
  return (max_t - config.t0) / config.beta + 1;
}

/// Instrumentation shared by all index strategies. Monotone within a run.
struct OperationCounters {
  std::uint64_t replacement_searches = 0;
  std::uint64_t nodes_visited = 0;
  std::uint64_t accesses = 0;  // LC-Tree only
  std::uint64_t reroots = 0;

  void reset() { *this = OperationCounters{}; }
};

}  // namespace swconn
