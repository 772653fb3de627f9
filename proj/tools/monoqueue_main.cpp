// monoqueue: generate, solve, benchmark and plot monotone-priority-queue
// shortest-path runs over DIMACS .gr graphs.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "monoqueue/cli.hpp"

namespace mq = monoqueue;

int main(int argc, char** argv) {
  CLI::App app{"Monotone priority queues for shortest paths: Dial, multi-level "
               "buckets, hot queues, and radix heaps"};
  app.require_subcommand(1);

  // --- gen ------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a DIMACS .gr instance");
  bool gen_path_flag = false, gen_random_flag = false, gen_grid_flag = false;
  std::string gen_type;
  mq::cli::GenOptions gen_options;
  std::uint32_t gen_n = 0, gen_rows = 0, gen_cols = 0;
  std::uint64_t gen_m = 0, gen_seed = 0;
  std::uint64_t gen_w = 1, gen_wmin = 1, gen_wmax = 1;
  gen->add_flag("--path", gen_path_flag, "single path instance");
  gen->add_flag("--random", gen_random_flag, "uniform random arcs");
  gen->add_flag("--grid", gen_grid_flag, "directed grid (right/down arcs)");
  gen->add_option("--type", gen_type, "path | random | grid");
  gen->add_option("--n", gen_n, "vertex count (path/random)");
  gen->add_option("--m", gen_m, "arc count (random)");
  gen->add_option("--rows", gen_rows, "grid rows");
  gen->add_option("--cols", gen_cols, "grid cols");
  gen->add_option("--w", gen_w, "constant weight (path)");
  gen->add_option("--w-min", gen_wmin, "minimum weight (random)");
  gen->add_option("--w-max", gen_wmax, "maximum weight (random/grid)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_options.out, "output file (stdout when omitted)");

  // --- solve ----------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Solve SSSP and print 'd <v> <dist>' lines");
  mq::cli::SolveOptions solve_options;
  std::string solve_backend = "heap";
  std::uint32_t solve_k = 2;
  std::uint64_t solve_delta = 2, solve_p = 1;
  std::int64_t solve_t = -1;
  solve->add_option("graph", solve_options.graph_path, "DIMACS .gr file")->required();
  solve->add_option("--source", solve_options.source_1based, "source vertex (1-based)")
      ->default_val(1);
  solve->add_option("--backend", solve_backend, "heap|dial|mlb|radix1|radix2|hot")
      ->default_val("heap");
  solve->add_option("--k", solve_k, "levels (mlb/hot)")->default_val(2);
  solve->add_option("--delta", solve_delta, "inner buckets (radix2)")->default_val(2);
  solve->add_option("--t", solve_t, "hot threshold (hot; default from C)");
  solve->add_option("--p", solve_p, "bucket width multiplier (mlb/hot)")->default_val(1);
  solve->add_flag("--verify", solve_options.verify,
                  "check the tree and cross-check against bellman-ford");

  // --- bench ----------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Run a benchmark matrix and emit CSV");
  mq::cli::BenchOptions bench_options;
  bench->add_option("config", bench_options.config_path, "key=value config file")
      ->required();
  bench->add_option("--out", bench_options.output_override,
                    "override the config's output path");

  // --- plot -----------------------------------------------------------
  auto* plot = app.add_subcommand("plot", "Render an SVG trend plot from bench CSV");
  mq::cli::PlotOptions plot_options;
  plot->add_option("csv", plot_options.csv_path, "bench CSV file")->required();
  plot->add_option("--x", plot_options.spec.x_field, "x field")->required();
  plot->add_option("--y", plot_options.spec.y_field, "y field")->required();
  plot->add_option("--group", plot_options.spec.group_field, "group field")->required();
  plot->add_option("--out", plot_options.out_path, "output SVG file")->required();
  plot->add_flag("--log-log", plot_options.spec.log_log, "log-log axes");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    int chosen = (gen_path_flag ? 1 : 0) + (gen_random_flag ? 1 : 0) +
                 (gen_grid_flag ? 1 : 0) + (gen_type.empty() ? 0 : 1);
    if (chosen != 1) {
      std::cerr << "gen: choose exactly one of --path/--random/--grid or --type\n";
      return mq::cli::kExitValidation;
    }
    if (gen_path_flag) gen_type = "path";
    if (gen_random_flag) gen_type = "random";
    if (gen_grid_flag) gen_type = "grid";
    mq::GenSpec& spec = gen_options.spec;
    if (gen_type == "path") {
      spec.type = mq::GenSpec::Type::Path;
    } else if (gen_type == "random") {
      spec.type = mq::GenSpec::Type::Random;
    } else if (gen_type == "grid") {
      spec.type = mq::GenSpec::Type::Grid;
    } else {
      std::cerr << "gen: unknown type '" << gen_type << "'\n";
      return mq::cli::kExitValidation;
    }
    spec.n = gen_n;
    spec.m = gen_m;
    spec.rows = gen_rows;
    spec.cols = gen_cols;
    spec.w = gen_w;
    spec.w_min = gen_wmin;
    spec.w_max = gen_wmax;
    spec.seed = gen_seed;
    return mq::cli::cmd_gen(gen_options, std::cout, std::cerr);
  }
  if (solve->parsed()) {
    const auto kind = mq::backend_from_string(solve_backend);
    if (!kind) {
      std::cerr << "solve: unknown backend '" << solve_backend << "'\n";
      return mq::cli::kExitValidation;
    }
    solve_options.cfg.backend = *kind;
    solve_options.cfg.k = solve_k;
    solve_options.cfg.delta = solve_delta;
    solve_options.cfg.p = solve_p;
    if (solve_t >= 0) solve_options.cfg.hot_t = static_cast<std::uint64_t>(solve_t);
    return mq::cli::cmd_solve(solve_options, std::cout, std::cerr);
  }
  if (bench->parsed()) return mq::cli::cmd_bench(bench_options, std::cout, std::cerr);
  if (plot->parsed()) return mq::cli::cmd_plot(plot_options, std::cerr);
  return mq::cli::kExitValidation;
}
