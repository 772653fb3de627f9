#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoqueue/binary_heap.hpp"
#include "monoqueue/core.hpp"
#include "monoqueue/dial.hpp"
#include "monoqueue/graph.hpp"
#include "monoqueue/hot_queue.hpp"
#include "monoqueue/multi_level_bucket.hpp"
#include "monoqueue/radix_heap.hpp"

namespace monoqueue {

/// Shortest-path tree with instrumentation. Unreachable vertices carry an
/// empty optional rather than a sentinel value, so distance arithmetic in
/// checks cannot overflow.
struct SsspResult {
  std::vector<std::optional<Key>> dist;
  std::vector<std::optional<VertexId>> parent;
  OpCounters counters;
  std::chrono::nanoseconds wall_time{0};
};

enum class BackendKind { BinaryHeap, Dial, Mlb, Radix1, Radix2, Hot };

inline const char* to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::BinaryHeap: return "heap";
    case BackendKind::Dial: return "dial";
    case BackendKind::Mlb: return "mlb";
    case BackendKind::Radix1: return "radix1";
    case BackendKind::Radix2: return "radix2";
    case BackendKind::Hot: return "hot";
  }
  return "?";
}

inline std::optional<BackendKind> backend_from_string(std::string_view name) {
  if (name == "heap") return BackendKind::BinaryHeap;
  if (name == "dial") return BackendKind::Dial;
  if (name == "mlb") return BackendKind::Mlb;
  if (name == "radix1") return BackendKind::Radix1;
  if (name == "radix2") return BackendKind::Radix2;
  if (name == "hot") return BackendKind::Hot;
  return std::nullopt;
}

struct SolverConfig {
  BackendKind backend = BackendKind::BinaryHeap;
  std::uint32_t k = 2;                  // mlb/hot levels
  std::uint64_t delta = 2;              // radix2 inner buckets
  std::optional<std::uint64_t> hot_t;   // hot threshold; defaulted from C when unset
  std::uint64_t p = 1;                  // wide-bucket width multiplier
};

struct NoQueueObserver {
  template <typename B>
  void operator()(const B&) const {}
};

/// Label-setting run over any backend. Vertices enter the queue when their
/// label first becomes finite; improvements use decrease-key. A queue error
/// here means a backend bug, not bad input.
///
/// The observer is invoked after every queue operation with the backend, for
/// instrumented test runs; the default compiles away.
template <QueueBackend B, typename Observer = NoQueueObserver>
SsspResult dijkstra_with(const Graph& g, VertexId source, B backend,
                         std::uint64_t p = 1, Observer observe = {}) {
  if (source >= g.n) throw std::invalid_argument("dijkstra: source out of range");
  enum class State : std::uint8_t { Unreached, Queued, Settled };
  SsspResult result;
  result.dist.assign(g.n, std::nullopt);
  result.parent.assign(g.n, std::nullopt);
  std::vector<State> state(g.n, State::Unreached);
  std::vector<Key> label(g.n, 0);

  const auto started = std::chrono::steady_clock::now();
  CheckedQueue<B> queue(std::move(backend), p);
  const auto check = [](std::optional<QueueError> err) {
    if (err) throw std::logic_error("queue rejected a monotone operation: " + err->describe());
  };
  label[source] = 0;
  state[source] = State::Queued;
  check(queue.insert(source, 0));
  observe(queue.backend());
  while (auto popped = queue.extract()) {
    observe(queue.backend());
    const VertexId u = popped->id;
    assert(state[u] == State::Queued && label[u] == popped->key);
    state[u] = State::Settled;
    result.dist[u] = popped->key;
    for (std::uint64_t a = g.offsets[u]; a < g.offsets[u + 1]; ++a) {
      const VertexId v = g.targets[a];
      const Key candidate = popped->key + g.weights[a];
      if (state[v] == State::Settled) {
        assert(candidate + (p - 1) >= label[v]);  // settled labels are final
        continue;
      }
      if (state[v] == State::Unreached) {
        label[v] = candidate;
        result.parent[v] = u;
        state[v] = State::Queued;
        check(queue.insert(v, candidate));
        observe(queue.backend());
      } else if (candidate < label[v]) {
        label[v] = candidate;
        result.parent[v] = u;
        check(queue.decrease(v, candidate));
        observe(queue.backend());
      }
    }
  }
  result.counters = queue.counters();
  result.wall_time = std::chrono::steady_clock::now() - started;
  return result;
}

inline std::uint64_t radix_max_key(const Graph& g, Key c_eff) {
  if (c_eff > 0 && g.n > std::numeric_limits<Key>::max() / c_eff / 2)
    throw std::invalid_argument("n*C does not fit a 64-bit key");
  return static_cast<Key>(g.n) * c_eff;
}

/// Dispatch on the configured backend. Queues are built with C = max arc
/// weight (at least 1) and, for radix heaps, max_key = n*C, the largest
/// possible distance.
template <typename Observer = NoQueueObserver>
SsspResult dijkstra(const Graph& g, VertexId source, const SolverConfig& cfg,
                    Observer observe = {}) {
  if (source >= g.n) throw std::invalid_argument("dijkstra: source out of range");
  if (cfg.p < 1) throw std::invalid_argument("dijkstra: p must be >= 1");
  if (cfg.p > 1) {
    if (g.m == 0 || cfg.p > g.min_weight)
      throw std::invalid_argument("dijkstra: p must not exceed the minimum arc weight");
  }
  const Key c_eff = std::max<Key>(1, g.c);
  switch (cfg.backend) {
    case BackendKind::BinaryHeap:
      return dijkstra_with(g, source, BinaryHeapQueue(g.n), 1, observe);
    case BackendKind::Dial:
      return dijkstra_with(g, source, DialQueue(c_eff, g.n), 1, observe);
    case BackendKind::Mlb:
      return dijkstra_with(g, source, MultiLevelBucketQueue(c_eff, cfg.k, cfg.p, g.n),
                           cfg.p, observe);
    case BackendKind::Radix1:
      return dijkstra_with(g, source, RadixHeap(c_eff, radix_max_key(g, c_eff), g.n),
                           1, observe);
    case BackendKind::Radix2:
      return dijkstra_with(
          g, source, TwoLevelRadixHeap(c_eff, radix_max_key(g, c_eff), cfg.delta, g.n),
          1, observe);
    case BackendKind::Hot: {
      const std::uint64_t t =
          cfg.hot_t ? *cfg.hot_t : HotQueue::default_threshold(c_eff, cfg.k);
      return dijkstra_with(g, source, HotQueue(c_eff, cfg.k, cfg.p, t, g.n), cfg.p,
                           observe);
    }
  }
  throw std::logic_error("unknown backend");
}

/// Exact distances by n-1 relaxation rounds with early exit. Independent of
/// the queue machinery; serves as the correctness oracle.
inline SsspResult bellman_ford(const Graph& g, VertexId source) {
  if (source >= g.n) throw std::invalid_argument("bellman_ford: source out of range");
  SsspResult result;
  result.dist.assign(g.n, std::nullopt);
  result.parent.assign(g.n, std::nullopt);
  result.dist[source] = 0;
  const auto started = std::chrono::steady_clock::now();
  for (std::uint32_t round = 0; round < g.n; ++round) {
    bool changed = false;
    for (std::uint32_t u = 0; u < g.n; ++u) {
      if (!result.dist[u]) continue;
      for (std::uint64_t a = g.offsets[u]; a < g.offsets[u + 1]; ++a) {
        const VertexId v = g.targets[a];
        const Key candidate = *result.dist[u] + g.weights[a];
        if (!result.dist[v] || candidate < *result.dist[v]) {
          result.dist[v] = candidate;
          result.parent[v] = u;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  result.wall_time = std::chrono::steady_clock::now() - started;
  return result;
}

/// Checks that `result` is a valid shortest-path tree with exact distances:
/// source condition, parent-arc consistency, arc slackness, and parent chains
/// that reach the source acyclically (needed because zero-weight cycles could
/// otherwise fake consistent parents). Violations come back as data.
inline std::vector<std::string> verify(const Graph& g, VertexId source,
                                       const SsspResult& result) {
  std::vector<std::string> violations;
  const auto complain = [&](std::string msg) { violations.push_back(std::move(msg)); };
  if (result.dist.size() != g.n || result.parent.size() != g.n) {
    complain("result arrays have the wrong size");
    return violations;
  }
  if (!result.dist[source] || *result.dist[source] != 0)
    complain("source distance is not 0");
  if (result.parent[source]) complain("source has a parent");

  for (std::uint32_t v = 0; v < g.n; ++v) {
    if (v == source) continue;
    if (result.dist[v].has_value() != result.parent[v].has_value()) {
      complain("vertex " + std::to_string(v) + ": reachability of dist and parent disagree");
      continue;
    }
    if (!result.dist[v]) continue;
    const VertexId u = *result.parent[v];
    if (u >= g.n || !result.dist[u]) {
      complain("vertex " + std::to_string(v) + ": parent unreachable");
      continue;
    }
    bool consistent = false;
    for (std::uint64_t a = g.offsets[u]; a < g.offsets[u + 1]; ++a) {
      if (g.targets[a] == v && *result.dist[u] + g.weights[a] == *result.dist[v]) {
        consistent = true;
        break;
      }
    }
    if (!consistent)
      complain("vertex " + std::to_string(v) + ": no parent arc matches its distance");
  }

  for (std::uint32_t u = 0; u < g.n; ++u) {
    if (!result.dist[u]) continue;
    for (std::uint64_t a = g.offsets[u]; a < g.offsets[u + 1]; ++a) {
      const VertexId v = g.targets[a];
      if (!result.dist[v] || *result.dist[v] > *result.dist[u] + g.weights[a]) {
        complain("arc " + std::to_string(u) + "->" + std::to_string(v) + " is slack");
      }
    }
  }

  // Parent chains must reach the source without cycles.
  std::vector<std::uint8_t> mark(g.n, 0);  // 0 unvisited, 1 on path, 2 done
  mark[source] = 2;
  for (std::uint32_t v = 0; v < g.n; ++v) {
    if (!result.dist[v] || mark[v] != 0) continue;
    std::vector<VertexId> path;
    VertexId cur = v;
    while (mark[cur] == 0 && result.dist[cur] && result.parent[cur]) {
      mark[cur] = 1;
      path.push_back(cur);
      cur = *result.parent[cur];
    }
    const bool ok = mark[cur] == 2;
    if (mark[cur] == 1)
      complain("parent cycle through vertex " + std::to_string(cur));
    for (const VertexId w : path) mark[w] = ok ? 2 : 3;
  }
  return violations;
}

}  // namespace monoqueue
