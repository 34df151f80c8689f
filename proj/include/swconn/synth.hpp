#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "swconn/core.hpp"
#include "swconn/rng.hpp"

namespace swconn {

struct PowerLawSpec {
  std::uint64_t vertices = 1000;
  std::size_t edges = 10000;
  double exponent = 2.1;  // degree distribution tail exponent, > 2
  Timestamp t_max = 0;    // 0 means one time unit per edge
  std::uint64_t seed = 1;
};

/// Chung-Lu style stream: endpoint i is drawn with probability proportional
/// to (i + 1)^(-1 / (exponent - 1)), which yields a power-law degree tail.
/// Self-loops are redrawn. Timestamps are sorted uniform draws over
/// [0, t_max), the same scheme ingest uses for untimed files.
inline std::vector<StreamingEdge> power_law_stream(const PowerLawSpec& spec) {
  if (spec.vertices < 2) throw std::invalid_argument("power-law stream needs at least 2 vertices");
  if (spec.exponent <= 2.0) throw std::invalid_argument("exponent must exceed 2");
  const double power = -1.0 / (spec.exponent - 1.0);
  std::vector<double> cumulative(spec.vertices);
  double acc = 0;
  for (std::uint64_t i = 0; i < spec.vertices; ++i) {
    acc += std::pow(static_cast<double>(i + 1), power);
    cumulative[i] = acc;
  }
  Rng rng(spec.seed);
  auto draw = [&]() -> VertexId {
    const double x = rng.unit() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    return static_cast<VertexId>(std::min<std::size_t>(it - cumulative.begin(), spec.vertices - 1));
  };
  const Timestamp t_max = spec.t_max > 0 ? spec.t_max : spec.edges;
  std::vector<Timestamp> times(spec.edges);
  for (auto& t : times) t = rng.below(t_max);
  std::sort(times.begin(), times.end());

  std::vector<StreamingEdge> out;
  out.reserve(spec.edges);
  for (std::size_t k = 0; k < spec.edges; ++k) {
    VertexId u = draw(), v = draw();
    while (u == v) v = draw();
    out.push_back({u, v, times[k]});
  }
  return out;
}

/// Uniform random endpoints over [0, vertices), sorted uniform timestamps.
inline std::vector<StreamingEdge> uniform_stream(std::uint64_t vertices, std::size_t edges,
                                                 Timestamp t_max, std::uint64_t seed) {
  if (vertices < 2) throw std::invalid_argument("uniform stream needs at least 2 vertices");
  Rng rng(seed);
  if (t_max == 0) t_max = edges;
  std::vector<Timestamp> times(edges);
  for (auto& t : times) t = rng.below(t_max);
  std::sort(times.begin(), times.end());
  std::vector<StreamingEdge> out;
  out.reserve(edges);
  for (std::size_t k = 0; k < edges; ++k) {
    const VertexId u = rng.below(vertices);
    VertexId v = rng.below(vertices - 1);
    if (v >= u) ++v;
    out.push_back({u, v, times[k]});
  }
  return out;
}

}  // namespace swconn
