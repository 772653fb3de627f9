#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <variant>

#include <catch2/catch_amalgamated.hpp>

#include "monoqueue/bench.hpp"
#include "monoqueue/cli.hpp"
#include "monoqueue/svg_plot.hpp"

using namespace monoqueue;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "monoqueue_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("bench config parsing") {
  SECTION("full config") {
    const auto r = parse_bench_config(
        "# demo\n"
        "gen = path n=100 w=7\n"
        "gen = random n=50 m=200 wmin=1 wmax=16 seed=3\n"
        "backend = dial\n"
        "backend = mlb k=2 p=1\n"
        "backend = hot k=3 t=8\n"
        "source = 1\n"
        "reps = 2\n"
        "threads = 2\n"
        "output = out.csv\n");
    REQUIRE(std::holds_alternative<BenchConfig>(r));
    const auto& cfg = std::get<BenchConfig>(r);
    CHECK(cfg.instances.size() == 2);
    CHECK(cfg.backends.size() == 3);
    CHECK(cfg.backends[2].hot_t == std::optional<std::uint64_t>{8});
    CHECK(cfg.reps == 2);
    CHECK(cfg.output == "out.csv");
  }
  SECTION("errors carry line numbers") {
    const auto r = parse_bench_config("gen = path n=5 w=1\nbackend = warp\n");
    REQUIRE(std::holds_alternative<ParseError>(r));
    CHECK(std::get<ParseError>(r).line == 2);
  }
  SECTION("a config without backends is rejected") {
    CHECK(std::holds_alternative<ParseError>(parse_bench_config("gen = path n=5 w=1\n")));
  }
}

TEST_CASE("bench run cardinality, header, and checksum agreement") {
  const auto parsed = parse_bench_config(
      "gen = path n=60 w=5\n"
      "gen = grid rows=5 cols=6 wmax=9 seed=2\n"
      "backend = dial\n"
      "backend = radix1\n"
      "backend = heap\n"
      "reps = 2\n");
  REQUIRE(std::holds_alternative<BenchConfig>(parsed));
  const auto& cfg = std::get<BenchConfig>(parsed);
  const auto rows = run_bench(cfg, [](const std::string&) -> std::optional<std::string> {
    return std::nullopt;
  });
  REQUIRE(rows.size() == 12);  // 2 instances x 3 backends x 2 reps

  const std::string csv = bench_rows_to_csv(rows);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "instance,n,m,C,backend,k,delta,t,p,rep,wall_ns,inserts,extracts,decreases,"
        "empty_scans,expansions,moves,heap_ops,dist_checksum");

  // Same instance, same checksum; counters within budget.
  for (const auto& row : rows) {
    CHECK(row.counters.inserts <= row.n);
    CHECK(row.counters.decreases <= row.m);
    for (const auto& other : rows) {
      if (other.instance == row.instance) CHECK(other.dist_checksum == row.dist_checksum);
    }
  }
}

TEST_CASE("bench honors the MONOQUEUE_THREADS override") {
  const auto parsed = parse_bench_config(
      "gen = path n=40 w=3\nbackend = dial\nbackend = heap\nreps = 3\nthreads = 1\n");
  REQUIRE(std::holds_alternative<BenchConfig>(parsed));
  ::setenv("MONOQUEUE_THREADS", "4", 1);
  const auto rows = run_bench(std::get<BenchConfig>(parsed),
                              [](const std::string&) -> std::optional<std::string> {
                                return std::nullopt;
                              });
  ::unsetenv("MONOQUEUE_THREADS");
  REQUIRE(rows.size() == 6);
  // Deterministic row order regardless of scheduling.
  CHECK(rows[0].backend == "dial");
  CHECK(rows[0].rep == 0);
  CHECK(rows[1].rep == 1);
  CHECK(rows[5].backend == "heap");
}

TEST_CASE("plot rendering") {
  const std::string csv =
      "instance,C,empty_scans,backend\n"
      "a,64,100,dial\n"
      "a,4096,6400,dial\n"
      "a,64,20,mlb\n"
      "a,4096,160,mlb\n";
  PlotSpec spec{"C", "empty_scans", "backend", false};

  SECTION("one polyline per group, deterministic output") {
    const auto r1 = render_plot_svg(csv, spec);
    REQUIRE(std::holds_alternative<std::string>(r1));
    const auto& svg = std::get<std::string>(r1);
    CHECK(svg.find("<svg") == 0);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);
    CHECK(svg.find(">dial</text>") != std::string::npos);
    CHECK(svg.find(">mlb</text>") != std::string::npos);
    const auto r2 = render_plot_svg(csv, spec);
    CHECK(std::get<std::string>(r2) == svg);
  }
  SECTION("reps sharing an x are averaged into one point") {
    const std::string with_reps = csv + "a,64,40,mlb\n";
    const auto r = render_plot_svg(with_reps, spec);
    REQUIRE(std::holds_alternative<std::string>(r));
    // Two polylines with two points each: 4 circles total.
    const std::string& svg = std::get<std::string>(r);
    std::size_t circles = 0, at = 0;
    while ((at = svg.find("<circle", at)) != std::string::npos) {
      ++circles;
      ++at;
    }
    CHECK(circles == 4);
  }
  SECTION("log-log") {
    PlotSpec log_spec = spec;
    log_spec.log_log = true;
    CHECK(std::holds_alternative<std::string>(render_plot_svg(csv, log_spec)));
  }
  SECTION("missing field") {
    const auto r = render_plot_svg(csv, {"C", "nope", "backend", false});
    REQUIRE(std::holds_alternative<PlotError>(r));
  }
  SECTION("empty CSV") {
    CHECK(std::holds_alternative<PlotError>(render_plot_svg("", spec)));
    CHECK(std::holds_alternative<PlotError>(
        render_plot_svg("instance,C,empty_scans,backend\n", spec)));
  }
}

TEST_CASE("cmd_gen writes deterministic DIMACS files") {
  GenSpec spec;
  spec.type = GenSpec::Type::Path;
  spec.n = 5;
  spec.w = 2;
  const auto out = temp_dir() / "gen_path.gr";

  std::ostringstream sink, err;
  cli::GenOptions options{spec, out.string()};
  REQUIRE(cli::cmd_gen(options, sink, err) == cli::kExitOk);
  const std::string first = slurp(out);
  CHECK(first.find("p sp 5 4") != std::string::npos);
  std::size_t arcs_of_weight_2 = 0, at = 0;
  while ((at = first.find(" 2\n", at)) != std::string::npos) {
    ++arcs_of_weight_2;
    ++at;
  }
  CHECK(arcs_of_weight_2 == 4);

  REQUIRE(cli::cmd_gen(options, sink, err) == cli::kExitOk);
  CHECK(slurp(out) == first);  // byte-identical on re-run

  SECTION("invalid spec fails validation") {
    cli::GenOptions bad{GenSpec{}, ""};
    bad.spec.type = GenSpec::Type::Path;
    bad.spec.n = 0;
    std::ostringstream sink2, err2;
    CHECK(cli::cmd_gen(bad, sink2, err2) == cli::kExitValidation);
  }
}

TEST_CASE("cmd_solve prints the result dump and verifies") {
  const auto graph_file = temp_dir() / "triangle.gr";
  {
    std::ofstream out(graph_file);
    out << "p sp 3 3\na 1 2 2\na 1 3 5\na 2 3 1\n";
  }
  cli::SolveOptions options;
  options.graph_path = graph_file.string();
  options.cfg.backend = BackendKind::Dial;

  std::ostringstream out, err;
  REQUIRE(cli::cmd_solve(options, out, err) == cli::kExitOk);
  CHECK(out.str() == "d 1 0\nd 2 2\nd 3 3\n");

  SECTION("any backend produces the identical dump") {
    options.cfg.backend = BackendKind::Mlb;
    options.cfg.k = 2;
    std::ostringstream out2, err2;
    REQUIRE(cli::cmd_solve(options, out2, err2) == cli::kExitOk);
    CHECK(out2.str() == out.str());
  }
  SECTION("--verify passes on an honest run") {
    options.verify = true;
    std::ostringstream out2, err2;
    CHECK(cli::cmd_solve(options, out2, err2) == cli::kExitOk);
  }
  SECTION("p above the minimum weight is a config error") {
    options.cfg.backend = BackendKind::Mlb;
    options.cfg.p = 3;
    std::ostringstream out2, err2;
    CHECK(cli::cmd_solve(options, out2, err2) == cli::kExitValidation);
  }
  SECTION("missing file is an I/O error") {
    options.graph_path = (temp_dir() / "nope.gr").string();
    std::ostringstream out2, err2;
    CHECK(cli::cmd_solve(options, out2, err2) == cli::kExitIo);
  }
  SECTION("unreachable vertices print the sentinel") {
    const auto two_part = temp_dir() / "twopart.gr";
    std::ofstream(two_part) << "p sp 3 1\na 1 2 3\n";
    cli::SolveOptions opt2;
    opt2.graph_path = two_part.string();
    std::ostringstream out2, err2;
    REQUIRE(cli::cmd_solve(opt2, out2, err2) == cli::kExitOk);
    CHECK(out2.str() == "d 1 0\nd 2 3\nd 3 UNREACHABLE\n");
  }
}

TEST_CASE("cmd_bench end to end") {
  const auto config_file = temp_dir() / "bench.cfg";
  const auto csv_file = temp_dir() / "bench_out.csv";
  {
    std::ofstream out(config_file);
    out << "gen = path n=50 w=4\nbackend = dial\nbackend = mlb k=2\nreps = 1\n"
        << "output = " << csv_file.string() << "\n";
  }
  std::ostringstream sink, err;
  cli::BenchOptions options{config_file.string(), ""};
  REQUIRE(cli::cmd_bench(options, sink, err) == cli::kExitOk);
  const std::string csv = slurp(csv_file);
  CHECK(csv.rfind("instance,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rows

  SECTION("plot from the produced CSV") {
    const auto svg_file = temp_dir() / "bench.svg";
    cli::PlotOptions plot{csv_file.string(), {"C", "wall_ns", "backend", false},
                          svg_file.string()};
    std::ostringstream err2;
    REQUIRE(cli::cmd_plot(plot, err2) == cli::kExitOk);
    CHECK(slurp(svg_file).find("<svg") == 0);
  }
  SECTION("bad config line is a validation error") {
    std::ofstream(config_file) << "nonsense\n";
    std::ostringstream err2;
    CHECK(cli::cmd_bench(options, sink, err2) == cli::kExitValidation);
  }
}
