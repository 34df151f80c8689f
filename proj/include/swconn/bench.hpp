#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "swconn/driver.hpp"
#include "swconn/ingest.hpp"
#include "swconn/oracle.hpp"
#include "swconn/strategy.hpp"

namespace swconn {

/// Bad flags or run specifications (exit status 1).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitCheck = 3 };

struct RunSpec {
  std::string input;
  Strategy strategy = Strategy::kOmstD;
  Timestamp alpha = 0;  // time units; 0 means derive from edges_per_window
  Timestamp beta = 0;
  std::size_t edges_per_window = 0;
  std::size_t edges_per_slide = 0;
  std::size_t workload = 1000;
  std::uint64_t seed = 1;
  TimestampMode timestamp_mode = TimestampMode::kExplicit;
  Timestamp t_max = 0;
  bool verify = false;
  /// Time origin; the first timestamp of the stream when unset.
  std::optional<Timestamp> t0;
};

/// Mean edges per time unit over the stream's time span.
inline double edge_rate(std::span<const StreamingEdge> stream) {
  if (stream.empty()) return 0;
  const double span = static_cast<double>(stream.back().t - stream.front().t + 1);
  return static_cast<double>(stream.size()) / span;
}

/// Converts an expected edge count into time units at the given rate.
inline Timestamp edges_to_time(std::size_t edges, double rate) {
  if (rate <= 0) return 1;
  return std::max<Timestamp>(1, static_cast<Timestamp>(std::llround(static_cast<double>(edges) / rate)));
}

/// Window configuration of spec on stream; windows start at spec.t0 or the
/// first timestamp. Time-unit values win over edge-count values.
inline WindowConfig resolve_window(const RunSpec& spec, std::span<const StreamingEdge> stream) {
  const double rate = edge_rate(stream);
  WindowConfig config;
  config.alpha = spec.alpha > 0 ? spec.alpha
                 : spec.edges_per_window > 0 ? edges_to_time(spec.edges_per_window, rate)
                                             : 0;
  config.beta = spec.beta > 0 ? spec.beta
                : spec.edges_per_slide > 0 ? edges_to_time(spec.edges_per_slide, rate)
                                           : 0;
  if (config.alpha == 0 || config.beta == 0) {
    throw UsageError("window size and slide must be given in time units or expected edges");
  }
  if (spec.alpha == 0 && spec.beta == 0 && config.beta > config.alpha) config.beta = config.alpha;
  config.t0 = spec.t0 ? *spec.t0 : stream.empty() ? 0 : stream.front().t;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

inline constexpr int kCsvSchema = 1;

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "schema", "strategy", "alpha", "beta", "workload", "edges", "seconds", "throughput",
      "q_p95", "q_p99", "wm_p95", "wm_p99", "mem_vertices", "mem_tree_edges",
      "mem_nontree_edges", "peak_mem", "replacement_searches", "accesses",
      "mem_logical_bytes", "ns_per_edge", "answer_checksum", "status"};
  return columns;
}

/// One CSV row. Latencies are nanoseconds, peak_mem and mem_logical_bytes
/// are bytes, throughput is edges per second.
struct RunRow {
  std::string strategy;
  Timestamp alpha = 0, beta = 0;
  std::size_t workload = 0;
  MetricsReport metrics;
  std::string status = "ok";
  // Not emitted; these group rows for checksum comparison.
  std::string input;
  std::uint64_t seed = 0;
  Timestamp t0 = 0;
};

inline void write_csv_header(std::ostream& out) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

inline void write_csv_row(std::ostream& out, const RunRow& r) {
  const MetricsReport& m = r.metrics;
  out << kCsvSchema << ',' << r.strategy << ',' << r.alpha << ',' << r.beta << ',' << r.workload << ','
      << m.edges << ',' << m.seconds << ',' << m.throughput << ',' << m.q_p95.count() << ','
      << m.q_p99.count() << ',' << m.wm_p95.count() << ',' << m.wm_p99.count() << ','
      << m.memory.vertices << ',' << m.memory.tree_edges << ',' << m.memory.nontree_edges << ','
      << m.peak_rss_bytes << ',' << m.counters.replacement_searches << ',' << m.counters.accesses << ','
      << m.memory.logical_bytes << ',' << m.ns_per_edge << ',' << m.answer_checksum << ','
      << r.status << '\n';
}

/// Parses one data row written by write_csv_row.
inline RunRow parse_csv_row(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  if (f.size() != csv_columns().size()) throw std::runtime_error("csv row has wrong column count");
  if (std::stoi(f[0]) != kCsvSchema) throw std::runtime_error("unsupported csv schema " + f[0]);
  RunRow r;
  MetricsReport& m = r.metrics;
  r.strategy = f[1];
  r.alpha = std::stoull(f[2]);
  r.beta = std::stoull(f[3]);
  r.workload = std::stoull(f[4]);
  m.edges = std::stoull(f[5]);
  m.seconds = std::stod(f[6]);
  m.throughput = std::stod(f[7]);
  m.q_p95 = Nanos(std::stoll(f[8]));
  m.q_p99 = Nanos(std::stoll(f[9]));
  m.wm_p95 = Nanos(std::stoll(f[10]));
  m.wm_p99 = Nanos(std::stoll(f[11]));
  m.memory.vertices = std::stoull(f[12]);
  m.memory.tree_edges = std::stoull(f[13]);
  m.memory.nontree_edges = std::stoull(f[14]);
  m.peak_rss_bytes = std::stoull(f[15]);
  m.counters.replacement_searches = std::stoull(f[16]);
  m.counters.accesses = std::stoull(f[17]);
  m.memory.logical_bytes = std::stoull(f[18]);
  m.ns_per_edge = std::stod(f[19]);
  m.answer_checksum = std::stoull(f[20]);
  r.status = f[21];
  return r;
}

/// Gnuplot-friendly summary: one whitespace-separated line per
/// (strategy, workload, alpha, beta) point.
inline void write_summary(std::ostream& out, const std::vector<RunRow>& rows) {
  out << "# strategy workload alpha beta q_p95_ns q_p99_ns wm_p95_ns wm_p99_ns throughput_eps status\n";
  std::vector<const RunRow*> sorted;
  for (const auto& r : rows) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const RunRow* a, const RunRow* b) {
    return std::tie(a->strategy, a->workload, a->alpha, a->beta) <
           std::tie(b->strategy, b->workload, b->alpha, b->beta);
  });
  for (const RunRow* r : sorted) {
    const MetricsReport& m = r->metrics;
    out << r->strategy << ' ' << r->workload << ' ' << r->alpha << ' ' << r->beta << ' '
        << m.q_p95.count() << ' ' << m.q_p99.count() << ' ' << m.wm_p95.count() << ' '
        << m.wm_p99.count() << ' ' << m.throughput << ' ' << r->status << '\n';
  }
}

/// Runs one spec on an already ingested stream.
inline RunRow run_spec_on(const RunSpec& spec, std::span<const StreamingEdge> stream) {
  const WindowConfig config = resolve_window(spec, stream);
  const auto universe = stream_universe(stream);
  if (universe.size() < 2) throw std::runtime_error("stream has fewer than 2 vertices");
  const Workload workload = generate_workload(universe, spec.workload, spec.seed);
  auto index = make_index(spec.strategy);
  RunOptions options;
  options.keep_answers = spec.verify;
  RunResult result = run(stream, config, *index, workload, options);

  RunRow row;
  row.strategy = std::string(strategy_name(spec.strategy));
  row.alpha = config.alpha;
  row.beta = config.beta;
  row.t0 = config.t0;
  row.workload = spec.workload;
  row.metrics = result.metrics;
  row.input = spec.input;
  row.seed = spec.seed;
  if (spec.verify && replay_oracle(stream, config, workload.pairs) != result.answers) {
    row.status = "verify-failed";
  }
  return row;
}

inline IngestOptions ingest_options(const RunSpec& spec) {
  return {spec.timestamp_mode, spec.t_max, spec.seed};
}

inline RunRow run_spec(const RunSpec& spec) {
  const IngestResult data = ingest(spec.input, ingest_options(spec));
  return run_spec_on(spec, data.edges);
}

/// Applies one `key=value` setting to spec. Keys mirror the long flags.
inline void apply_setting(RunSpec& spec, const std::string& key, const std::string& value) {
  try {
    if (key == "input") spec.input = value;
    else if (key == "strategy") {
      auto s = parse_strategy(value);
      if (!s) throw UsageError("unknown strategy " + value);
      spec.strategy = *s;
    } else if (key == "alpha") spec.alpha = std::stoull(value);
    else if (key == "beta") spec.beta = std::stoull(value);
    else if (key == "edges-per-window") spec.edges_per_window = std::stoull(value);
    else if (key == "edges-per-slide") spec.edges_per_slide = std::stoull(value);
    else if (key == "workload") spec.workload = std::stoull(value);
    else if (key == "seed") spec.seed = std::stoull(value);
    else if (key == "t-max") spec.t_max = std::stoull(value);
    else if (key == "t0") spec.t0 = std::stoull(value);
    else if (key == "timestamp-mode") {
      if (value == "explicit") spec.timestamp_mode = TimestampMode::kExplicit;
      else if (value == "uniform") spec.timestamp_mode = TimestampMode::kUniform;
      else throw UsageError("unknown timestamp mode " + value);
    } else if (key == "verify") spec.verify = value == "1" || value == "true";
    else throw UsageError("unknown sweep key " + key);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const UsageError*>(&e)) throw;
    throw UsageError("bad value for " + key + ": " + value);
  }
}

/// Sweep file: one run per non-comment line, each a list of key=value
/// settings applied over base.
inline std::vector<RunSpec> parse_sweep(std::istream& in, const RunSpec& base) {
  std::vector<RunSpec> specs;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    RunSpec spec = base;
    for (auto token : tokens) {
      const auto eq = token.find('=');
      if (eq == std::string_view::npos) throw UsageError("sweep entry without '=': " + std::string(token));
      apply_setting(spec, std::string(token.substr(0, eq)), std::string(token.substr(eq + 1)));
    }
    specs.push_back(spec);
  }
  return specs;
}

/// SWCONN_THREADS, or the hardware concurrency when unset or invalid.
inline unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SWCONN_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = static_cast<unsigned>(v);
  }
  return n;
}

struct SweepOptions {
  bool check_answers = true;
  unsigned threads = 0;  // 0 means sweep_threads()
};

/// Runs every spec, in parallel across specs. A failing run is recorded in
/// its row's status and the sweep continues. Runs that share input, window,
/// workload and seed must produce the same answer checksum; mismatches are
/// marked `checksum-mismatch`.
inline std::vector<RunRow> sweep(const std::vector<RunSpec>& specs, const SweepOptions& options = {}) {
  if (specs.empty()) throw UsageError("sweep needs at least one run");
  // Ingest each distinct input once.
  std::map<std::tuple<std::string, int, Timestamp, std::uint64_t>, std::vector<StreamingEdge>> streams;
  std::vector<std::string> load_error(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    const std::uint64_t seed = s.timestamp_mode == TimestampMode::kUniform ? s.seed : 0;
    auto key = std::make_tuple(s.input, static_cast<int>(s.timestamp_mode), s.t_max, seed);
    if (streams.count(key)) continue;
    try {
      streams[key] = ingest(s.input, ingest_options(s)).edges;
    } catch (const std::exception& e) {
      load_error[i] = e.what();
    }
  }

  std::vector<RunRow> rows(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      const auto& s = specs[i];
      RunRow& row = rows[i];
      row.strategy = std::string(strategy_name(s.strategy));
      row.workload = s.workload;
      row.input = s.input;
      row.seed = s.seed;
      const std::uint64_t seed = s.timestamp_mode == TimestampMode::kUniform ? s.seed : 0;
      auto it = streams.find(std::make_tuple(s.input, static_cast<int>(s.timestamp_mode), s.t_max, seed));
      if (it == streams.end()) {
        row.status = "error:load";
        continue;
      }
      try {
        row = run_spec_on(s, it->second);
      } catch (const std::exception&) {
        row.status = "error:run";
      }
    }
  };
  const unsigned threads =
      std::min<std::size_t>(options.threads ? options.threads : sweep_threads(), specs.size());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (options.check_answers) {
    std::map<std::tuple<std::string, Timestamp, Timestamp, Timestamp, std::size_t, std::uint64_t>, std::uint64_t>
        seen;
    for (auto& r : rows) {
      if (r.status != "ok") continue;
      auto key = std::make_tuple(r.input, r.t0, r.alpha, r.beta, r.workload, r.seed);
      auto [it, fresh] = seen.try_emplace(key, r.metrics.answer_checksum);
      if (!fresh && it->second != r.metrics.answer_checksum) r.status = "checksum-mismatch";
    }
  }
  return rows;
}

/// Exit status for a finished set of rows.
inline int rows_exit_code(const std::vector<RunRow>& rows) {
  int code = kExitOk;
  for (const auto& r : rows) {
    if (r.status == "verify-failed" || r.status == "checksum-mismatch") return kExitCheck;
    if (r.status.rfind("error", 0) == 0) code = kExitData;
  }
  return code;
}

}  // namespace swconn
