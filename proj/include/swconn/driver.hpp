#pragma once

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "swconn/core.hpp"
#include "swconn/index.hpp"
#include "swconn/oracle.hpp"
#include "swconn/rng.hpp"

namespace swconn {

struct Workload {
  std::vector<QueryPair> pairs;
  std::uint64_t seed = 0;
  /// Vertex universe the pairs were drawn from; needed only for resampling.
  std::vector<VertexId> universe;

  std::size_t size() const { return pairs.size(); }
};

/// Uniform i.i.d. pairs with distinct endpoints drawn from universe.
inline Workload generate_workload(std::span<const VertexId> universe, std::size_t size,
                                  std::uint64_t seed) {
  if (universe.size() < 2) throw std::invalid_argument("workload universe needs at least 2 vertices");
  if (size < 1) throw std::invalid_argument("workload size must be at least 1");
  Workload w;
  w.seed = seed;
  w.universe.assign(universe.begin(), universe.end());
  w.pairs.reserve(size);
  Rng rng(seed);
  const std::uint64_t n = universe.size();
  while (w.pairs.size() < size) {
    const std::uint64_t a = rng.below(n);
    // Draw b from the n - 1 other positions so no draw is rejected.
    std::uint64_t b = rng.below(n - 1);
    if (b >= a) ++b;
    w.pairs.emplace_back(universe[a], universe[b]);
  }
  return w;
}

/// Distinct endpoints of a stream, ascending.
inline std::vector<VertexId> stream_universe(std::span<const StreamingEdge> stream) {
  std::vector<VertexId> out;
  out.reserve(2 * stream.size());
  for (const auto& e : stream) {
    out.push_back(e.u);
    out.push_back(e.v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

using Nanos = std::chrono::nanoseconds;

struct LatencyRecord {
  std::uint64_t window = 0;
  Nanos query{0};
  Nanos wm{0};
};

struct MetricsReport {
  std::size_t edges = 0;
  std::size_t windows = 0;
  double seconds = 0;
  double throughput = 0;  // edges per second
  double ns_per_edge = 0;
  Nanos q_p95{0}, q_p99{0}, wm_p95{0}, wm_p99{0};
  MemoryFootprint memory;  // per-field maximum over boundary samples
  std::size_t peak_rss_bytes = 0;
  OperationCounters counters;
  std::uint64_t answer_checksum = 0;
};

/// Nearest-rank percentile; 0 for an empty sample.
inline Nanos percentile(std::vector<Nanos> sample, double p) {
  if (sample.empty()) return Nanos{0};
  std::sort(sample.begin(), sample.end());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(sample.size())));
  rank = std::clamp<std::size_t>(rank, 1, sample.size());
  return sample[rank - 1];
}

inline std::size_t peak_rss_bytes() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
  return static_cast<std::size_t>(usage.ru_maxrss) * 1024;  // kilobytes on Linux
}

enum class BoundaryPhase { kAfterQueries, kAfterExpiry };

struct BoundaryEvent {
  BoundaryPhase phase;
  WindowSnapshot window;
  const ConnectivityIndex& index;
  const std::deque<StreamingEdge>& live;
};

struct RunOptions {
  /// Draw a fresh workload (same size and universe) for every window.
  bool resample = false;
  bool keep_answers = true;
  std::function<void(const BoundaryEvent&)> observer;
};

struct RunResult {
  MetricsReport metrics;
  std::vector<WindowAnswers> answers;
  std::vector<LatencyRecord> latencies;
};

/// Replays stream through index: arrivals are inserted, and when an arrival
/// passes the end of the current window that window completes. A completed
/// window first runs the workload, then deletes the edges expiring before
/// the next window. After the last arrival the remaining windows are drained
/// until every edge has been deleted.
inline RunResult run(std::span<const StreamingEdge> stream, const WindowConfig& config,
                     ConnectivityIndex& index, const Workload& workload,
                     const RunOptions& options = {}) {
  using Clock = std::chrono::steady_clock;
  config.validate();
  if (options.resample && workload.universe.size() < 2) {
    throw std::invalid_argument("resampling needs a workload universe");
  }

  RunResult result;
  MetricsReport& m = result.metrics;
  std::deque<StreamingEdge> live;
  std::vector<QueryPair> pairs = workload.pairs;
  std::uint64_t checksum = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t x) {
    for (int k = 0; k < 8; ++k) {
      checksum ^= (x >> (8 * k)) & 0xff;
      checksum *= 0x100000001b3ULL;
    }
  };

  auto complete = [&](std::uint64_t i) {
    const WindowSnapshot w = window_bounds(config, i);
    const MemoryFootprint mem = index.memory();
    m.memory.vertices = std::max(m.memory.vertices, mem.vertices);
    m.memory.tree_edges = std::max(m.memory.tree_edges, mem.tree_edges);
    m.memory.nontree_edges = std::max(m.memory.nontree_edges, mem.nontree_edges);
    m.memory.logical_bytes = std::max(m.memory.logical_bytes, mem.logical_bytes);
    if (options.resample && i > 0) {
      pairs = generate_workload(workload.universe, workload.size(), workload.seed + i).pairs;
    }

    WindowAnswers row{w, {}};
    row.answers.resize(pairs.size());
    const auto q0 = Clock::now();
    index.on_window_complete();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      row.answers[k] = index.query(pairs[k].first, pairs[k].second);
    }
    const auto q1 = Clock::now();
    mix(i);
    for (bool a : row.answers) mix(a ? 1 : 0);
    if (options.observer) options.observer({BoundaryPhase::kAfterQueries, w, index, live});

    const Timestamp horizon = expiry_horizon(config, w);
    const auto e0 = Clock::now();
    while (!live.empty() && live.front().t < horizon) {
      index.remove(live.front());
      live.pop_front();
    }
    const auto e1 = Clock::now();
    if (options.observer) options.observer({BoundaryPhase::kAfterExpiry, w, index, live});

    result.latencies.push_back({i, std::chrono::duration_cast<Nanos>(q1 - q0),
                                std::chrono::duration_cast<Nanos>(e1 - e0)});
    if (options.keep_answers) result.answers.push_back(std::move(row));
  };

  const auto start = Clock::now();
  std::uint64_t current = 0;
  Timestamp max_t = 0;
  bool any = false;
  for (std::size_t pos = 0; pos < stream.size(); ++pos) {
    const StreamingEdge& e = stream[pos];
    if (pos > 0 && e.t < stream[pos - 1].t) {
      throw StreamOrderError(pos, "edge " + std::to_string(pos) + " arrives out of timestamp order");
    }
    if (e.t < config.t0) continue;
    while (e.t > window_bounds(config, current).t_e) complete(current++);
    max_t = e.t;
    any = true;
    if (e.is_self_loop()) continue;
    index.insert(e);
    live.push_back(e);
  }
  if (any) {
    const std::uint64_t total = window_count(config, max_t);
    while (current < total) complete(current++);
  }
  const auto stop = Clock::now();

  m.edges = stream.size();
  m.windows = result.latencies.size();
  m.seconds = std::chrono::duration<double>(stop - start).count();
  m.throughput = m.seconds > 0 ? static_cast<double>(m.edges) / m.seconds : 0.0;
  m.ns_per_edge = m.edges > 0 ? m.seconds * 1e9 / static_cast<double>(m.edges) : 0.0;
  std::vector<Nanos> q, wm;
  q.reserve(result.latencies.size());
  wm.reserve(result.latencies.size());
  for (const auto& r : result.latencies) {
    q.push_back(r.query);
    wm.push_back(r.wm);
  }
  m.q_p95 = percentile(q, 95);
  m.q_p99 = percentile(q, 99);
  m.wm_p95 = percentile(wm, 95);
  m.wm_p99 = percentile(wm, 99);
  m.peak_rss_bytes = peak_rss_bytes();
  m.counters = index.counters();
  m.answer_checksum = checksum;
  return result;
}

}  // namespace swconn
