#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoqueue/core.hpp"
#include "monoqueue/oracle.hpp"

namespace mqtest {

using namespace monoqueue;

struct SeqOp {
  enum class Kind { Insert, Decrease, Extract };
  Kind kind;
  VertexId id;  // for Extract: the id the generator's model popped
  Key key;      // for Extract: the key the model popped
};

/// Balanced monotone operation sequence: every key handed to insert/decrease
/// stays within [last extracted min, last extracted min + c], and the queue
/// drains to empty at the end. Deterministic in the seed.
inline std::vector<SeqOp> gen_sequence(std::uint64_t seed, std::size_t total_ops,
                                       Key c, std::uint32_t capacity) {
  std::mt19937_64 rng(seed);
  const auto draw = [&](std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
  };
  OracleQueue model(capacity);
  Key last_min = 0;
  std::vector<VertexId> free_ids;
  for (std::uint32_t id = capacity; id-- > 0;) free_ids.push_back(id);
  std::vector<VertexId> live;
  std::vector<std::uint32_t> live_pos(capacity, 0);
  std::vector<SeqOp> ops;
  ops.reserve(total_ops);

  const auto do_extract = [&] {
    const auto popped = model.extract();
    last_min = popped->key;
    const std::uint32_t at = live_pos[popped->id];
    live_pos[live.back()] = at;
    std::swap(live[at], live.back());
    live.pop_back();
    free_ids.push_back(popped->id);
    ops.push_back({SeqOp::Kind::Extract, popped->id, popped->key});
  };

  while (ops.size() + live.size() < total_ops) {
    const std::uint64_t pick = draw(0, 99);
    if (pick < 45 && !free_ids.empty()) {
      const VertexId id = free_ids.back();
      free_ids.pop_back();
      const Key key = last_min + draw(0, c);
      live_pos[id] = static_cast<std::uint32_t>(live.size());
      live.push_back(id);
      model.insert(id, key);
      ops.push_back({SeqOp::Kind::Insert, id, key});
    } else if (pick < 70 && !live.empty()) {
      const VertexId id = live[draw(0, live.size() - 1)];
      const Key current = model.key_of(id);
      if (current <= last_min) continue;
      const Key new_key = last_min + draw(0, current - last_min - 1);
      model.decrease(id, new_key);
      ops.push_back({SeqOp::Kind::Decrease, id, new_key});
    } else if (!live.empty()) {
      do_extract();
    }
  }
  while (!live.empty()) do_extract();
  return ops;
}

struct NoPerOp {
  template <typename Q>
  void operator()(const Q&) const {}
};

/// Replays a sequence through the checked wrapper, returning the extracted
/// elements.
///
/// Backends break key ties by whatever id they like, so the ids a backend
/// frees can differ from the ids the generator's model freed. Tied elements
/// are interchangeable, and the replay keeps a script-id <-> backend-id
/// bijection: when the backend pops a different (equal-key) element than the
/// script expected, the two bindings are swapped. A popped key that differs
/// from the scripted key is a real divergence and aborts the run.
template <QueueBackend B, typename PerOp = NoPerOp>
std::vector<Element> apply_sequence(CheckedQueue<B>& queue,
                                    const std::vector<SeqOp>& ops,
                                    PerOp per_op = {}) {
  constexpr VertexId npos = kNoVertex;
  VertexId capacity = 0;
  for (const SeqOp& op : ops) {
    if (op.kind != SeqOp::Kind::Extract) capacity = std::max(capacity, op.id + 1);
  }
  std::vector<VertexId> to_backend(capacity, npos);
  std::vector<VertexId> to_script(capacity, npos);
  std::vector<VertexId> backend_free;
  for (VertexId id = capacity; id-- > 0;) backend_free.push_back(id);

  std::vector<Element> extracted;
  const auto check = [](const std::optional<QueueError>& err) {
    if (err) throw std::runtime_error("sequence rejected: " + err->describe());
  };
  for (const SeqOp& op : ops) {
    switch (op.kind) {
      case SeqOp::Kind::Insert: {
        const VertexId backend_id = backend_free.back();
        backend_free.pop_back();
        to_backend[op.id] = backend_id;
        to_script[backend_id] = op.id;
        check(queue.insert(backend_id, op.key));
        break;
      }
      case SeqOp::Kind::Decrease:
        check(queue.decrease(to_backend[op.id], op.key));
        break;
      case SeqOp::Kind::Extract: {
        const auto popped = queue.extract();
        if (!popped) throw std::runtime_error("extract on a non-empty queue came back empty");
        if (popped->key != op.key) {
          throw std::runtime_error("extracted key " + std::to_string(popped->key) +
                                   ", the oracle extracted " + std::to_string(op.key));
        }
        // Rebind so the script id the model freed pairs with the backend id
        // that actually left the queue.
        const VertexId freed_script = op.id;
        const VertexId freed_backend = popped->id;
        const VertexId other_backend = to_backend[freed_script];
        const VertexId other_script = to_script[freed_backend];
        to_backend[other_script] = other_backend;
        to_script[other_backend] = other_script;
        to_backend[freed_script] = npos;
        to_script[freed_backend] = npos;
        backend_free.push_back(freed_backend);
        extracted.push_back(*popped);
        break;
      }
    }
    per_op(queue.backend());
  }
  return extracted;
}

inline std::vector<Key> keys_of(const std::vector<Element>& elements) {
  std::vector<Key> keys;
  keys.reserve(elements.size());
  for (const Element& e : elements) keys.push_back(e.key);
  return keys;
}

}  // namespace mqtest
