#pragma once

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "monoqueue/core.hpp"

namespace monoqueue {

/// Directed graph in compressed adjacency form with non-negative integer
/// weights. No self-loops. `c` is the maximum and `min_weight` the minimum
/// arc weight (both 0 when there are no arcs).
struct Graph {
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  std::vector<std::uint64_t> offsets;  // size n+1, offsets[n] == m
  std::vector<VertexId> targets;
  std::vector<Key> weights;
  Key c = 0;
  Key min_weight = 0;

  friend bool operator==(const Graph&, const Graph&) = default;
};

struct Arc {
  VertexId from;
  VertexId to;
  Key weight;
};

inline Graph build_graph(std::uint32_t n, const std::vector<Arc>& arcs) {
  Graph g;
  g.n = n;
  g.m = arcs.size();
  g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Arc& a : arcs) {
    if (a.from >= n || a.to >= n) throw std::invalid_argument("arc endpoint out of range");
    if (a.from == a.to) throw std::invalid_argument("self-loops are not allowed");
    ++g.offsets[a.from + 1];
  }
  for (std::uint32_t v = 0; v < n; ++v) g.offsets[v + 1] += g.offsets[v];
  g.targets.resize(arcs.size());
  g.weights.resize(arcs.size());
  std::vector<std::uint64_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (const Arc& a : arcs) {
    const std::uint64_t at = cursor[a.from]++;
    g.targets[at] = a.to;
    g.weights[at] = a.weight;
  }
  if (!arcs.empty()) {
    g.c = 0;
    g.min_weight = std::numeric_limits<Key>::max();
    for (const Arc& a : arcs) {
      g.c = std::max(g.c, a.weight);
      g.min_weight = std::min(g.min_weight, a.weight);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// DIMACS shortest-path format: "c" comments, one "p sp <n> <m>" line, then
// "a <u> <v> <w>" arcs with 1-based vertex ids.

struct ParseError {
  std::size_t line;
  std::string message;
};

using ParseResult = std::variant<Graph, ParseError>;

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
inline std::optional<T> parse_uint(std::string_view tok) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return value;
}

}  // namespace detail

inline ParseResult parse_dimacs(std::string_view text) {
  bool have_p = false;
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  std::vector<Arc> arcs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "c") continue;
    if (toks[0] == "p") {
      if (have_p) return ParseError{line_no, "duplicate p-line"};
      if (toks.size() != 4 || toks[1] != "sp") return ParseError{line_no, "malformed p-line"};
      const auto pn = detail::parse_uint<std::uint32_t>(toks[2]);
      const auto pm = detail::parse_uint<std::uint64_t>(toks[3]);
      if (!pn || !pm) return ParseError{line_no, "malformed p-line"};
      if (*pn == 0) return ParseError{line_no, "graph must have at least one vertex"};
      n = *pn;
      m = *pm;
      have_p = true;
      arcs.reserve(m);
      continue;
    }
    if (toks[0] == "a") {
      if (!have_p) return ParseError{line_no, "arc before p-line"};
      if (toks.size() != 4) return ParseError{line_no, "malformed arc line"};
      const auto u = detail::parse_uint<std::uint64_t>(toks[1]);
      const auto v = detail::parse_uint<std::uint64_t>(toks[2]);
      const auto w = detail::parse_uint<Key>(toks[3]);
      if (!u || !v) return ParseError{line_no, "malformed arc line"};
      if (!w) return ParseError{line_no, "arc weight must be a non-negative integer"};
      if (*u < 1 || *u > n || *v < 1 || *v > n)
        return ParseError{line_no, "vertex id out of range"};
      if (*u == *v) return ParseError{line_no, "self-loop"};
      if (arcs.size() == m) return ParseError{line_no, "more arcs than declared"};
      arcs.push_back({static_cast<VertexId>(*u - 1), static_cast<VertexId>(*v - 1), *w});
      continue;
    }
    return ParseError{line_no, "unknown line type"};
  }
  if (!have_p) return ParseError{line_no, "missing p-line"};
  if (arcs.size() != m)
    return ParseError{line_no, "arc count mismatch: declared " + std::to_string(m) +
                                   ", found " + std::to_string(arcs.size())};
  return build_graph(n, arcs);
}

inline std::string write_dimacs(const Graph& g, std::string_view comment = {}) {
  std::string out;
  if (!comment.empty()) {
    out += "c ";
    out += comment;
    out += '\n';
  }
  out += "p sp " + std::to_string(g.n) + " " + std::to_string(g.m) + "\n";
  for (std::uint32_t u = 0; u < g.n; ++u) {
    for (std::uint64_t a = g.offsets[u]; a < g.offsets[u + 1]; ++a) {
      out += "a " + std::to_string(u + 1) + " " + std::to_string(g.targets[a] + 1) +
             " " + std::to_string(g.weights[a]) + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Instance generators. All are deterministic in the seed; random draws go
// through a hand-rolled rejection sampler so outputs do not depend on the
// standard library's distribution implementations.

namespace detail {

class SplitDraw {
 public:
  explicit SplitDraw(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [lo, hi] by masked rejection.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    assert(lo <= hi);
    const std::uint64_t span = hi - lo;
    if (span == 0) return lo;
    std::uint64_t mask = span;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    while (true) {
      const std::uint64_t draw = rng_() & mask;
      if (draw <= span) return lo + draw;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace detail

inline Graph gen_random(std::uint32_t n, std::uint64_t m, Key w_min, Key w_max,
                        std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_random: n must be >= 1");
  if (w_min > w_max) throw std::invalid_argument("gen_random: w_min > w_max");
  const std::uint64_t max_arcs = static_cast<std::uint64_t>(n) * (n - 1);
  if (m > max_arcs) throw std::invalid_argument("gen_random: m exceeds n(n-1)");
  detail::SplitDraw draw(seed);
  std::unordered_set<std::uint64_t> used;
  used.reserve(m * 2);
  std::vector<Arc> arcs;
  arcs.reserve(m);
  while (arcs.size() < m) {
    const auto u = static_cast<VertexId>(draw.uniform(0, n - 1));
    const auto v = static_cast<VertexId>(draw.uniform(0, n - 1));
    if (u == v) continue;
    const std::uint64_t code = static_cast<std::uint64_t>(u) * n + v;
    if (!used.insert(code).second) continue;
    arcs.push_back({u, v, draw.uniform(w_min, w_max)});
  }
  return build_graph(n, arcs);
}

inline Graph gen_grid(std::uint32_t rows, std::uint32_t cols, Key w_max,
                      std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("gen_grid: empty grid");
  if (w_max < 1) throw std::invalid_argument("gen_grid: w_max must be >= 1");
  detail::SplitDraw draw(seed);
  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(rows) * (cols - 1) +
               static_cast<std::size_t>(rows - 1) * cols);
  const auto at = [cols](std::uint32_t r, std::uint32_t c) {
    return static_cast<VertexId>(r * cols + c);
  };
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) arcs.push_back({at(r, c), at(r, c + 1), draw.uniform(1, w_max)});
      if (r + 1 < rows) arcs.push_back({at(r, c), at(r + 1, c), draw.uniform(1, w_max)});
    }
  }
  return build_graph(static_cast<std::uint32_t>(rows) * cols, arcs);
}

/// Single path with constant arc weight: the adversarial max-distance
/// instance, reaching distance (n-1)*w.
inline Graph gen_path(std::uint32_t n, Key w, std::uint64_t /*seed*/ = 0) {
  if (n < 1) throw std::invalid_argument("gen_path: n must be >= 1");
  std::vector<Arc> arcs;
  arcs.reserve(n - 1);
  for (std::uint32_t v = 0; v + 1 < n; ++v) arcs.push_back({v, v + 1, w});
  return build_graph(n, arcs);
}

}  // namespace monoqueue
