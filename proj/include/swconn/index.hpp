#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "swconn/core.hpp"

namespace swconn {

/// A tree edge as seen from outside an index: child endpoint, parent
/// endpoint, weight (the edge timestamp).
struct TreeEdge {
  VertexId child = 0;
  VertexId parent = 0;
  Timestamp weight = 0;

  StreamingEdge as_edge() const { return {child, parent, weight}; }
  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

struct MemoryFootprint {
  std::size_t vertices = 0;
  std::size_t tree_edges = 0;
  std::size_t nontree_edges = 0;
  std::size_t logical_bytes = 0;
};

/// Behavioural interface shared by every strategy: insert, delete, query.
/// Callers serialize access; queries may restructure the index.
class ConnectivityIndex {
 public:
  virtual ~ConnectivityIndex() = default;

  virtual std::string_view name() const = 0;

  virtual void insert(const StreamingEdge& e) = 0;
  virtual void remove(const StreamingEdge& e) = 0;
  virtual bool query(VertexId u, VertexId v) = 0;

  /// Called once per completed window, before its query batch.
  virtual void on_window_complete() {}

  virtual std::size_t tree_edge_count() const = 0;
  virtual std::size_t non_tree_edge_count() const = 0;
  virtual std::size_t vertex_count() const = 0;

  /// Sum of tree-edge weights; 0 for strategies that keep no forest.
  virtual std::uint64_t tree_weight() const { return 0; }
  virtual bool maintains_forest() const { return true; }

  virtual MemoryFootprint memory() const = 0;

  const OperationCounters& counters() const { return counters_; }
  void reset_counters() { counters_.reset(); }

 protected:
  OperationCounters counters_;
};

}  // namespace swconn
