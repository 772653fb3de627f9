#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "monoqueue/detail/intmath.hpp"
#include "monoqueue/graph.hpp"
#include "monoqueue/sssp.hpp"

namespace monoqueue {

/// Generator spec for benchmark instances; id() is a stable, comma-free
/// instance name for the CSV.
struct GenSpec {
  enum class Type { Path, Random, Grid };
  Type type = Type::Path;
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  Key w = 1;
  Key w_min = 1;
  Key w_max = 1;
  std::uint64_t seed = 0;

  std::string id() const {
    switch (type) {
      case Type::Path:
        return "path(n=" + std::to_string(n) + ";w=" + std::to_string(w) + ")";
      case Type::Random:
        return "random(n=" + std::to_string(n) + ";m=" + std::to_string(m) +
               ";wmin=" + std::to_string(w_min) + ";wmax=" + std::to_string(w_max) +
               ";seed=" + std::to_string(seed) + ")";
      case Type::Grid:
        return "grid(rows=" + std::to_string(rows) + ";cols=" + std::to_string(cols) +
               ";wmax=" + std::to_string(w_max) + ";seed=" + std::to_string(seed) + ")";
    }
    return "?";
  }

  Graph build() const {
    switch (type) {
      case Type::Path: return gen_path(n, w, seed);
      case Type::Random: return gen_random(n, m, w_min, w_max, seed);
      case Type::Grid: return gen_grid(rows, cols, w_max, seed);
    }
    throw std::logic_error("unknown generator type");
  }
};

struct BenchConfig {
  struct Instance {
    std::string path;              // file instance when non-empty
    std::optional<GenSpec> gen;    // generated instance otherwise
  };
  std::vector<Instance> instances;
  std::vector<SolverConfig> backends;
  std::uint32_t source_1based = 1;
  std::uint32_t reps = 1;
  std::uint32_t threads = 1;
  std::string output;  // CSV path; empty means stdout
};

struct BenchRow {
  std::string instance;
  std::uint32_t n;
  std::uint64_t m;
  Key c;
  std::string backend;
  std::uint32_t k;
  std::uint64_t delta;
  std::uint64_t t;
  std::uint64_t p;
  std::uint32_t rep;
  std::uint64_t wall_ns;
  OpCounters counters;
  std::uint64_t dist_checksum;
};

inline constexpr std::string_view kBenchCsvHeader =
    "instance,n,m,C,backend,k,delta,t,p,rep,wall_ns,inserts,extracts,decreases,"
    "empty_scans,expansions,moves,heap_ops,dist_checksum";

/// Failure with the CLI exit code it maps to (1 validation, 2 verification,
/// 3 I/O).
struct BenchError : std::runtime_error {
  int exit_code;
  BenchError(int code, const std::string& message)
      : std::runtime_error(message), exit_code(code) {}
};

inline std::uint64_t dist_checksum(const SsspResult& result) {
  detail::Fnv1a hash;
  for (const auto& d : result.dist) {
    hash.mix(d.has_value() ? 1 : 0);
    hash.mix(d.value_or(0));
  }
  return hash.state;
}

namespace detail {

inline std::optional<std::uint64_t> parse_kv_u64(std::string_view tok,
                                                 std::string_view key) {
  if (tok.size() <= key.size() + 1 || tok.substr(0, key.size()) != key ||
      tok[key.size()] != '=') {
    return std::nullopt;
  }
  return parse_uint<std::uint64_t>(tok.substr(key.size() + 1));
}

}  // namespace detail

/// "path n=2000 w=64 [seed=s]" | "random n=.. m=.. wmin=.. wmax=.. seed=.." |
/// "grid rows=.. cols=.. wmax=.. [seed=s]"
inline std::variant<GenSpec, std::string> parse_gen_spec(
    const std::vector<std::string_view>& toks) {
  if (toks.empty()) return std::string("missing generator type");
  GenSpec spec;
  if (toks[0] == "path") spec.type = GenSpec::Type::Path;
  else if (toks[0] == "random") spec.type = GenSpec::Type::Random;
  else if (toks[0] == "grid") spec.type = GenSpec::Type::Grid;
  else return "unknown generator type '" + std::string(toks[0]) + "'";
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto tok = toks[i];
    if (auto v = detail::parse_kv_u64(tok, "n")) spec.n = static_cast<std::uint32_t>(*v);
    else if (auto v2 = detail::parse_kv_u64(tok, "m")) spec.m = *v2;
    else if (auto v3 = detail::parse_kv_u64(tok, "rows")) spec.rows = static_cast<std::uint32_t>(*v3);
    else if (auto v4 = detail::parse_kv_u64(tok, "cols")) spec.cols = static_cast<std::uint32_t>(*v4);
    else if (auto v5 = detail::parse_kv_u64(tok, "w")) spec.w = *v5;
    else if (auto v6 = detail::parse_kv_u64(tok, "wmin")) spec.w_min = *v6;
    else if (auto v7 = detail::parse_kv_u64(tok, "wmax")) spec.w_max = *v7;
    else if (auto v8 = detail::parse_kv_u64(tok, "seed")) spec.seed = *v8;
    else return "bad generator parameter '" + std::string(tok) + "'";
  }
  switch (spec.type) {
    case GenSpec::Type::Path:
      if (spec.n < 1) return std::string("path generator needs n>=1");
      break;
    case GenSpec::Type::Random:
      if (spec.n < 1) return std::string("random generator needs n>=1");
      break;
    case GenSpec::Type::Grid:
      if (spec.rows < 1 || spec.cols < 1) return std::string("grid generator needs rows,cols>=1");
      break;
  }
  return spec;
}

/// "dial" | "heap" | "radix1" | "mlb [k=..] [p=..]" | "radix2 [delta=..]" |
/// "hot [k=..] [t=..] [p=..]"
inline std::variant<SolverConfig, std::string> parse_backend_spec(
    const std::vector<std::string_view>& toks) {
  if (toks.empty()) return std::string("missing backend name");
  SolverConfig cfg;
  const auto kind = backend_from_string(toks[0]);
  if (!kind) return "unknown backend '" + std::string(toks[0]) + "'";
  cfg.backend = *kind;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto tok = toks[i];
    if (auto v = detail::parse_kv_u64(tok, "k")) cfg.k = static_cast<std::uint32_t>(*v);
    else if (auto v2 = detail::parse_kv_u64(tok, "delta")) cfg.delta = *v2;
    else if (auto v3 = detail::parse_kv_u64(tok, "t")) cfg.hot_t = *v3;
    else if (auto v4 = detail::parse_kv_u64(tok, "p")) cfg.p = *v4;
    else return "bad backend parameter '" + std::string(tok) + "'";
  }
  if (cfg.k < 1 || cfg.k > 20) return std::string("k out of range");
  if (cfg.delta < 2) return std::string("delta must be >= 2");
  if (cfg.p < 1) return std::string("p must be >= 1");
  return cfg;
}

/// Flat key=value text: `instance = <path>`, `gen = <spec>`, `backend =
/// <spec>` (each repeatable), plus `source`, `reps`, `threads`, `output`.
/// '#' and blank lines are ignored.
inline std::variant<BenchConfig, ParseError> parse_bench_config(std::string_view text) {
  BenchConfig config;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (toks.size() < 3 || toks[1] != "=") return ParseError{line_no, "expected 'key = value'"};
    const auto key = toks[0];
    toks.erase(toks.begin(), toks.begin() + 2);
    if (key == "instance") {
      std::string path(toks[0]);
      if (toks.size() != 1) return ParseError{line_no, "instance takes one path"};
      if (path.find(',') != std::string::npos)
        return ParseError{line_no, "instance path must not contain a comma"};
      config.instances.push_back({std::move(path), std::nullopt});
    } else if (key == "gen") {
      auto parsed = parse_gen_spec(toks);
      if (auto* err = std::get_if<std::string>(&parsed)) return ParseError{line_no, *err};
      config.instances.push_back({"", std::get<GenSpec>(parsed)});
    } else if (key == "backend") {
      auto parsed = parse_backend_spec(toks);
      if (auto* err = std::get_if<std::string>(&parsed)) return ParseError{line_no, *err};
      config.backends.push_back(std::get<SolverConfig>(parsed));
    } else if (key == "source") {
      const auto v = detail::parse_uint<std::uint32_t>(toks[0]);
      if (!v || *v < 1 || toks.size() != 1) return ParseError{line_no, "bad source"};
      config.source_1based = *v;
    } else if (key == "reps") {
      const auto v = detail::parse_uint<std::uint32_t>(toks[0]);
      if (!v || *v < 1 || toks.size() != 1) return ParseError{line_no, "reps must be >= 1"};
      config.reps = *v;
    } else if (key == "threads") {
      const auto v = detail::parse_uint<std::uint32_t>(toks[0]);
      if (!v || *v < 1 || toks.size() != 1) return ParseError{line_no, "threads must be >= 1"};
      config.threads = *v;
    } else if (key == "output") {
      if (toks.size() != 1) return ParseError{line_no, "output takes one path"};
      config.output = std::string(toks[0]);
    } else {
      return ParseError{line_no, "unknown key '" + std::string(key) + "'"};
    }
  }
  if (config.instances.empty()) return ParseError{line_no, "no instances configured"};
  if (config.backends.empty()) return ParseError{line_no, "no backends configured"};
  return config;
}

inline std::string backend_param_string(const SolverConfig& cfg) {
  return std::string(to_string(cfg.backend));
}

/// Runs the full (instance x backend x rep) matrix. Graphs are immutable and
/// shared read-only; tasks fan out over worker threads and land in
/// pre-assigned row slots, so the CSV order is deterministic. The
/// MONOQUEUE_THREADS environment variable overrides the configured
/// parallelism.
///
/// `load_file` supplies the text of file instances (so callers control I/O).
template <typename FileLoader>
std::vector<BenchRow> run_bench(const BenchConfig& config, FileLoader load_file) {
  struct Prepared {
    std::string id;
    Graph graph;
  };
  std::vector<Prepared> instances;
  instances.reserve(config.instances.size());
  for (const auto& inst : config.instances) {
    if (inst.gen) {
      instances.push_back({inst.gen->id(), inst.gen->build()});
    } else {
      std::optional<std::string> text = load_file(inst.path);
      if (!text) throw BenchError(3, "cannot read instance file: " + inst.path);
      auto parsed = parse_dimacs(*text);
      if (auto* err = std::get_if<ParseError>(&parsed)) {
        throw BenchError(1, inst.path + ":" + std::to_string(err->line) + ": " + err->message);
      }
      instances.push_back({inst.path, std::move(std::get<Graph>(parsed))});
    }
    if (config.source_1based > instances.back().graph.n) {
      throw BenchError(1, "source vertex out of range for " + instances.back().id);
    }
  }

  struct Task {
    std::uint32_t instance;
    std::uint32_t backend;
    std::uint32_t rep;
  };
  std::vector<Task> tasks;
  for (std::uint32_t i = 0; i < instances.size(); ++i)
    for (std::uint32_t b = 0; b < config.backends.size(); ++b)
      for (std::uint32_t r = 0; r < config.reps; ++r) tasks.push_back({i, b, r});

  std::uint32_t threads = config.threads;
  if (const char* env = std::getenv("MONOQUEUE_THREADS")) {
    if (auto v = detail::parse_uint<std::uint32_t>(env); v && *v >= 1) threads = *v;
  }
  threads = std::max<std::uint32_t>(1, std::min<std::uint64_t>(threads, tasks.size()));

  std::vector<BenchRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;
  const VertexId source = config.source_1based - 1;

  const auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t at = next.fetch_add(1);
      if (at >= tasks.size()) return;
      const Task task = tasks[at];
      const Prepared& inst = instances[task.instance];
      const SolverConfig& cfg = config.backends[task.backend];
      try {
        const SsspResult result = dijkstra(inst.graph, source, cfg);
        BenchRow& row = rows[at];
        row.instance = inst.id;
        row.n = inst.graph.n;
        row.m = inst.graph.m;
        row.c = inst.graph.c;
        row.backend = to_string(cfg.backend);
        const bool leveled = cfg.backend == BackendKind::Mlb || cfg.backend == BackendKind::Hot;
        row.k = leveled ? cfg.k : 0;
        row.delta = cfg.backend == BackendKind::Radix2 ? cfg.delta : 0;
        row.t = cfg.backend == BackendKind::Hot
                    ? cfg.hot_t.value_or(HotQueue::default_threshold(
                          std::max<Key>(1, inst.graph.c), cfg.k))
                    : 0;
        row.p = leveled ? cfg.p : 1;
        row.rep = task.rep;
        row.wall_ns = static_cast<std::uint64_t>(result.wall_time.count());
        row.counters = result.counters;
        row.dist_checksum = dist_checksum(result);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::uint32_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw BenchError(1, first_error);

  // All backends must agree per instance; a checksum split means a solver bug.
  for (std::size_t i = 0; i < instances.size(); ++i) {
    std::optional<std::uint64_t> expected;
    for (std::size_t at = 0; at < tasks.size(); ++at) {
      if (tasks[at].instance != i) continue;
      if (!expected) expected = rows[at].dist_checksum;
      if (*expected != rows[at].dist_checksum) {
        throw BenchError(2, "dist checksum mismatch on " + instances[i].id + ": " +
                                rows[at].backend + " disagrees");
      }
    }
  }
  return rows;
}

inline std::string bench_rows_to_csv(const std::vector<BenchRow>& rows) {
  std::string out(kBenchCsvHeader);
  out += '\n';
  for (const BenchRow& row : rows) {
    out += row.instance + ',' + std::to_string(row.n) + ',' + std::to_string(row.m) +
           ',' + std::to_string(row.c) + ',' + row.backend + ',' +
           std::to_string(row.k) + ',' + std::to_string(row.delta) + ',' +
           std::to_string(row.t) + ',' + std::to_string(row.p) + ',' +
           std::to_string(row.rep) + ',' + std::to_string(row.wall_ns) + ',' +
           std::to_string(row.counters.inserts) + ',' +
           std::to_string(row.counters.extracts) + ',' +
           std::to_string(row.counters.decreases) + ',' +
           std::to_string(row.counters.empty_scan_steps) + ',' +
           std::to_string(row.counters.expansions) + ',' +
           std::to_string(row.counters.element_moves) + ',' +
           std::to_string(row.counters.heap_ops) + ',' +
           std::to_string(row.dist_checksum) + '\n';
  }
  return out;
}

}  // namespace monoqueue
