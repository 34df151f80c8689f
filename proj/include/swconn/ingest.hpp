#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "swconn/core.hpp"
#include "swconn/rng.hpp"

namespace swconn {

enum class TimestampMode { kExplicit, kUniform };

struct IngestOptions {
  TimestampMode mode = TimestampMode::kExplicit;
  /// Uniform mode draws timestamps from [0, t_max). 0 means the edge count.
  Timestamp t_max = 0;
  std::uint64_t seed = 1;
};

/// Malformed input; line is 1-based.
class IngestError : public std::runtime_error {
 public:
  IngestError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct IngestResult {
  std::vector<StreamingEdge> edges;
  /// Non-empty when the file used symbolic vertex names: labels[id] is the
  /// name of vertex id. Ids are assigned in order of first appearance.
  std::vector<std::string> labels;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace detail

/// Reads a whitespace-separated edge list. Lines starting with '#' and blank
/// lines are skipped; CRLF endings are accepted. In explicit mode every line
/// is `u v t` and timestamps must be non-decreasing. In uniform mode lines
/// are `u v` (further columns are ignored) and timestamps are sorted uniform
/// draws assigned in file order.
inline IngestResult ingest(std::istream& in, const IngestOptions& options) {
  struct Raw {
    std::string u, v;
    Timestamp t;
    std::size_t line;
  };
  std::vector<Raw> raw;
  bool numeric = true;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    Raw r{std::string(tokens[0]), "", 0, lineno};
    if (options.mode == TimestampMode::kExplicit) {
      if (tokens.size() != 3) throw IngestError(lineno, "expected `u v t`");
      if (!detail::parse_u64(tokens[2], r.t)) throw IngestError(lineno, "timestamp is not a non-negative integer");
      if (!raw.empty() && r.t < raw.back().t) {
        throw StreamOrderError(lineno, "line " + std::to_string(lineno) + ": timestamp decreases");
      }
    } else if (tokens.size() < 2) {
      throw IngestError(lineno, "expected `u v`");
    }
    r.v = std::string(tokens[1]);
    std::uint64_t probe;
    if (!detail::parse_u64(r.u, probe) || !detail::parse_u64(r.v, probe)) numeric = false;
    raw.push_back(std::move(r));
  }

  IngestResult out;
  out.edges.reserve(raw.size());
  std::unordered_map<std::string, VertexId> names;
  auto vertex = [&](const std::string& token) -> VertexId {
    if (numeric) {
      std::uint64_t id = 0;
      detail::parse_u64(token, id);
      return id;
    }
    auto [it, fresh] = names.try_emplace(token, out.labels.size());
    if (fresh) out.labels.push_back(token);
    return it->second;
  };
  for (const auto& r : raw) out.edges.push_back({vertex(r.u), vertex(r.v), r.t});

  if (options.mode == TimestampMode::kUniform && !out.edges.empty()) {
    const Timestamp t_max = options.t_max > 0 ? options.t_max : out.edges.size();
    Rng rng(options.seed);
    std::vector<Timestamp> samples(out.edges.size());
    for (auto& s : samples) s = rng.below(t_max);
    std::sort(samples.begin(), samples.end());
    for (std::size_t i = 0; i < samples.size(); ++i) out.edges[i].t = samples[i];
  }
  return out;
}

inline IngestResult ingest(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ingest(in, options);
}

}  // namespace swconn
