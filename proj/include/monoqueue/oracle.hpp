#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "monoqueue/core.hpp"

namespace monoqueue {

/// Reference queue backed by a sorted multiset keyed by (key, id).
/// Extraction tie-break is (key, id) lexicographic, which makes its behavior
/// fully deterministic; bucket backends are compared against it on key
/// sequences only.
class OracleQueue {
 public:
  explicit OracleQueue(const QueueConfig& cfg)
      : OracleQueue(cfg.capacity_n, cfg.max_key) {}

  explicit OracleQueue(std::uint32_t capacity_n,
                       Key max_key = std::numeric_limits<Key>::max() - 1)
      : max_key_(max_key), key_(capacity_n, 0), present_(capacity_n, 0) {}

  std::size_t size() const { return entries_.size(); }
  bool contains(VertexId id) const { return present_[id] != 0; }
  Key key_of(VertexId id) const {
    assert(contains(id));
    return key_[id];
  }
  Key max_key() const { return max_key_; }
  const OpCounters& counters() const { return counters_; }

  std::optional<QueueError> insert(VertexId id, Key key) {
    assert(!contains(id));
    entries_.emplace(key, id);
    key_[id] = key;
    present_[id] = 1;
    ++counters_.inserts;
    return std::nullopt;
  }

  std::optional<QueueError> decrease(VertexId id, Key new_key) {
    assert(contains(id) && new_key < key_[id]);
    entries_.erase({key_[id], id});
    entries_.emplace(new_key, id);
    key_[id] = new_key;
    ++counters_.decreases;
    ++counters_.element_moves;
    return std::nullopt;
  }

  std::optional<Element> extract() {
    if (entries_.empty()) return std::nullopt;
    const auto [key, id] = *entries_.begin();
    entries_.erase(entries_.begin());
    present_[id] = 0;
    ++counters_.extracts;
    return Element{id, key};
  }

 private:
  Key max_key_;
  std::set<std::pair<Key, VertexId>> entries_;
  std::vector<Key> key_;
  std::vector<std::uint8_t> present_;
  OpCounters counters_;
};

static_assert(QueueBackend<OracleQueue>);

}  // namespace monoqueue
