#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "monoqueue/bench.hpp"
#include "monoqueue/graph.hpp"
#include "monoqueue/sssp.hpp"
#include "monoqueue/svg_plot.hpp"

namespace monoqueue::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitIo = 3;

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline bool write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  return static_cast<bool>(out);
}

struct GenOptions {
  GenSpec spec;
  std::string out;  // empty writes to stdout
};

inline int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  Graph graph;
  try {
    graph = options.spec.build();
  } catch (const std::exception& e) {
    err << "gen: " << e.what() << "\n";
    return kExitValidation;
  }
  const std::string text = write_dimacs(graph, options.spec.id());
  if (options.out.empty()) {
    out << text;
    return kExitOk;
  }
  if (!write_file(options.out, text)) {
    err << "gen: cannot write " << options.out << "\n";
    return kExitIo;
  }
  return kExitOk;
}

struct SolveOptions {
  std::string graph_path;
  std::uint32_t source_1based = 1;
  SolverConfig cfg;
  bool verify = false;
};

inline int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
  const auto text = read_file(options.graph_path);
  if (!text) {
    err << "solve: cannot read " << options.graph_path << "\n";
    return kExitIo;
  }
  auto parsed = parse_dimacs(*text);
  if (auto* perr = std::get_if<ParseError>(&parsed)) {
    err << options.graph_path << ":" << perr->line << ": " << perr->message << "\n";
    return kExitValidation;
  }
  const Graph& graph = std::get<Graph>(parsed);
  if (options.source_1based < 1 || options.source_1based > graph.n) {
    err << "solve: source out of range\n";
    return kExitValidation;
  }
  SsspResult result;
  try {
    result = dijkstra(graph, options.source_1based - 1, options.cfg);
  } catch (const std::invalid_argument& e) {
    err << "solve: " << e.what() << "\n";
    return kExitValidation;
  }
  for (std::uint32_t v = 0; v < graph.n; ++v) {
    out << "d " << (v + 1) << " ";
    if (result.dist[v]) out << *result.dist[v];
    else out << "UNREACHABLE";
    out << "\n";
  }
  if (options.verify) {
    const auto violations = verify(graph, options.source_1based - 1, result);
    const SsspResult reference = bellman_ford(graph, options.source_1based - 1);
    const bool agree = reference.dist == result.dist;
    if (!violations.empty() || !agree) {
      for (const auto& v : violations) err << "violation: " << v << "\n";
      if (!agree) err << "violation: distances disagree with bellman-ford\n";
      return kExitVerification;
    }
    err << "verify: ok\n";
  }
  return kExitOk;
}

struct BenchOptions {
  std::string config_path;
  std::string output_override;  // optional CSV path
};

inline int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  const auto text = read_file(options.config_path);
  if (!text) {
    err << "bench: cannot read " << options.config_path << "\n";
    return kExitIo;
  }
  auto parsed = parse_bench_config(*text);
  if (auto* perr = std::get_if<ParseError>(&parsed)) {
    err << options.config_path << ":" << perr->line << ": " << perr->message << "\n";
    return kExitValidation;
  }
  BenchConfig config = std::get<BenchConfig>(parsed);
  if (!options.output_override.empty()) config.output = options.output_override;
  std::vector<BenchRow> rows;
  try {
    rows = run_bench(config, read_file);
  } catch (const BenchError& e) {
    err << "bench: " << e.what() << "\n";
    return e.exit_code;
  }
  const std::string csv = bench_rows_to_csv(rows);
  if (config.output.empty()) {
    out << csv;
    return kExitOk;
  }
  if (!write_file(config.output, csv)) {
    err << "bench: cannot write " << config.output << "\n";
    return kExitIo;
  }
  err << "bench: wrote " << rows.size() << " rows to " << config.output << "\n";
  return kExitOk;
}

struct PlotOptions {
  std::string csv_path;
  PlotSpec spec;
  std::string out_path;
};

inline int cmd_plot(const PlotOptions& options, std::ostream& err) {
  const auto text = read_file(options.csv_path);
  if (!text) {
    err << "plot: cannot read " << options.csv_path << "\n";
    return kExitIo;
  }
  auto rendered = render_plot_svg(*text, options.spec);
  if (auto* perr = std::get_if<PlotError>(&rendered)) {
    err << "plot: " << perr->message << "\n";
    return kExitValidation;
  }
  if (!write_file(options.out_path, std::get<std::string>(rendered))) {
    err << "plot: cannot write " << options.out_path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace monoqueue::cli
