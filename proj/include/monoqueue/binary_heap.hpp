#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "monoqueue/core.hpp"

namespace monoqueue {

/// Addressable binary min-heap over dense ids. Used directly as the
/// comparison-based reference backend and as the overflow heap inside the
/// hot queue (which needs erase-by-id).
class IndexedBinaryHeap {
 public:
  IndexedBinaryHeap() = default;
  explicit IndexedBinaryHeap(std::uint32_t capacity_n) : pos_(capacity_n, kAbsent) {}

  std::size_t size() const { return heap_.size(); }
  bool empty() const { return heap_.empty(); }
  bool contains(VertexId id) const { return pos_[id] != kAbsent; }
  Key key_of(VertexId id) const {
    assert(contains(id));
    return heap_[pos_[id]].key;
  }
  const Element& top() const {
    assert(!empty());
    return heap_[0];
  }

  void push(VertexId id, Key key) {
    assert(!contains(id));
    heap_.push_back({id, key});
    pos_[id] = static_cast<std::uint32_t>(heap_.size() - 1);
    sift_up(pos_[id]);
  }

  Element pop() {
    assert(!empty());
    Element out = heap_[0];
    remove_at(0);
    return out;
  }

  void decrease(VertexId id, Key new_key) {
    assert(contains(id) && new_key <= heap_[pos_[id]].key);
    heap_[pos_[id]].key = new_key;
    sift_up(pos_[id]);
  }

  void erase(VertexId id) {
    assert(contains(id));
    remove_at(pos_[id]);
  }

  void clear() {
    for (const Element& e : heap_) pos_[e.id] = kAbsent;
    heap_.clear();
  }

 private:
  static constexpr std::uint32_t kAbsent = 0xffffffffu;

  void remove_at(std::uint32_t at) {
    pos_[heap_[at].id] = kAbsent;
    if (at + 1 != heap_.size()) {
      heap_[at] = heap_.back();
      pos_[heap_[at].id] = at;
      heap_.pop_back();
      sift_down(at);
      sift_up(at);
    } else {
      heap_.pop_back();
    }
  }

  void sift_up(std::uint32_t at) {
    while (at > 0) {
      const std::uint32_t parent = (at - 1) / 2;
      if (heap_[parent].key <= heap_[at].key) break;
      swap_nodes(at, parent);
      at = parent;
    }
  }

  void sift_down(std::uint32_t at) {
    const std::uint32_t n = static_cast<std::uint32_t>(heap_.size());
    while (true) {
      std::uint32_t smallest = at;
      const std::uint32_t l = 2 * at + 1, r = 2 * at + 2;
      if (l < n && heap_[l].key < heap_[smallest].key) smallest = l;
      if (r < n && heap_[r].key < heap_[smallest].key) smallest = r;
      if (smallest == at) break;
      swap_nodes(at, smallest);
      at = smallest;
    }
  }

  void swap_nodes(std::uint32_t a, std::uint32_t b) {
    std::swap(heap_[a], heap_[b]);
    pos_[heap_[a].id] = a;
    pos_[heap_[b].id] = b;
  }

  std::vector<Element> heap_;
  std::vector<std::uint32_t> pos_;
};

/// Binary-heap backend: the comparison-based baseline every bucket structure
/// is benchmarked against. Each public operation counts as one heap_op.
class BinaryHeapQueue {
 public:
  explicit BinaryHeapQueue(const QueueConfig& cfg)
      : BinaryHeapQueue(cfg.capacity_n, cfg.max_key) {}

  explicit BinaryHeapQueue(std::uint32_t capacity_n,
                           Key max_key = std::numeric_limits<Key>::max() - 1)
      : heap_(capacity_n), max_key_(max_key) {}

  std::size_t size() const { return heap_.size(); }
  bool contains(VertexId id) const { return heap_.contains(id); }
  Key key_of(VertexId id) const { return heap_.key_of(id); }
  Key max_key() const { return max_key_; }
  const OpCounters& counters() const { return counters_; }

  std::optional<QueueError> insert(VertexId id, Key key) {
    heap_.push(id, key);
    ++counters_.inserts;
    ++counters_.heap_ops;
    return std::nullopt;
  }

  std::optional<QueueError> decrease(VertexId id, Key new_key) {
    heap_.decrease(id, new_key);
    ++counters_.decreases;
    ++counters_.heap_ops;
    return std::nullopt;
  }

  std::optional<Element> extract() {
    if (heap_.empty()) return std::nullopt;
    ++counters_.extracts;
    ++counters_.heap_ops;
    return heap_.pop();
  }

 private:
  IndexedBinaryHeap heap_;
  Key max_key_;
  OpCounters counters_;
};

static_assert(QueueBackend<BinaryHeapQueue>);

}  // namespace monoqueue
