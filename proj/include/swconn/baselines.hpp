#pragma once

#include <string_view>

#include "swconn/index.hpp"
#include "swconn/window_graph.hpp"

namespace swconn {

/// Stores the window graph and answers every query by graph traversal.
class DfsIndex final : public ConnectivityIndex {
 public:
  std::string_view name() const override { return "dfs"; }

  void insert(const StreamingEdge& e) override { graph_.add(e); }
  void remove(const StreamingEdge& e) override { graph_.remove(e); }

  bool query(VertexId u, VertexId v) override {
    const std::uint64_t before = searcher_.visited();
    const bool answer = searcher_.connected(graph_, u, v);
    counters_.nodes_visited += searcher_.visited() - before;
    return answer;
  }

  std::size_t tree_edge_count() const override { return 0; }
  std::size_t non_tree_edge_count() const override { return 0; }
  std::size_t vertex_count() const override { return graph_.vertex_count(); }
  bool maintains_forest() const override { return false; }

  MemoryFootprint memory() const override {
    return {graph_.vertex_count(), 0, 0, graph_.logical_bytes()};
  }

  const WindowGraph& graph() const { return graph_; }

 private:
  WindowGraph graph_;
  DfsSearcher searcher_;
};

/// Recomputes connected components once per window, then answers queries by
/// comparing component labels.
class RwcIndex final : public ConnectivityIndex {
 public:
  std::string_view name() const override { return "rwc"; }

  void insert(const StreamingEdge& e) override {
    graph_.add(e);
    dirty_ = true;
  }

  void remove(const StreamingEdge& e) override {
    graph_.remove(e);
    dirty_ = true;
  }

  void on_window_complete() override { rebuild(); }

  bool query(VertexId u, VertexId v) override {
    if (dirty_) rebuild();
    return rwc_query(labels_, u, v);
  }

  std::size_t tree_edge_count() const override { return 0; }
  std::size_t non_tree_edge_count() const override { return 0; }
  std::size_t vertex_count() const override { return graph_.vertex_count(); }
  bool maintains_forest() const override { return false; }

  MemoryFootprint memory() const override {
    const std::size_t labels = labels_.component.capacity() * sizeof(std::uint32_t);
    return {graph_.vertex_count(), 0, 0, graph_.logical_bytes() + labels};
  }

  const WindowGraph& graph() const { return graph_; }

 private:
  void rebuild() {
    rwc_rebuild(graph_, labels_, uf_);
    counters_.nodes_visited += graph_.slot_capacity() + graph_.edge_count();
    dirty_ = false;
  }

  WindowGraph graph_;
  RwcLabeling labels_;
  UnionFind uf_;
  bool dirty_ = true;
};

}  // namespace swconn
