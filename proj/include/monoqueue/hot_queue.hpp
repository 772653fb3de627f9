#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monoqueue/binary_heap.hpp"
#include "monoqueue/core.hpp"
#include "monoqueue/detail/intmath.hpp"
#include "monoqueue/multi_level_bucket.hpp"

namespace monoqueue {

/// Heap-on-top queue: a k-level bucket structure whose active bucket, when it
/// holds at most t elements, is mirrored into a binary heap instead of being
/// expanded. Operations whose key falls in the mirrored range apply to both
/// the bucket and the heap; once the bucket outgrows t the heap is dropped
/// and the bucket is expanded normally.
class HotQueue {
 public:
  explicit HotQueue(const QueueConfig& cfg)
      : HotQueue(cfg.c, cfg.k, cfg.width_multiplier, cfg.hot_threshold,
                 cfg.capacity_n, cfg.max_key) {}

  HotQueue(Key c, std::uint32_t k, std::uint64_t p, std::uint64_t t,
           std::uint32_t capacity_n,
           Key max_key = std::numeric_limits<Key>::max() - 1)
      : mlb_(c, k, p, capacity_n, max_key), heap_(capacity_n), t_(t) {}

  /// Threshold balancing expansion cost k*C^(1/k)/t against heap cost log t.
  static std::uint64_t default_threshold(Key c, std::uint32_t k) {
    return std::max<std::uint64_t>(2, detail::ceil_kth_root(c, k));
  }

  std::size_t size() const { return mlb_.size(); }
  bool contains(VertexId id) const { return mlb_.contains(id); }
  Key key_of(VertexId id) const { return mlb_.key_of(id); }
  Key max_key() const { return mlb_.max_key(); }
  const OpCounters& counters() const { return mlb_.counters(); }
  std::uint64_t threshold() const { return t_; }
  const MultiLevelBucketQueue& buckets() const { return mlb_; }
  bool hot_active() const { return hot_.has_value(); }
  std::uint32_t hot_level() const { return hot_->level; }
  std::size_t heap_size() const { return heap_.size(); }

  std::optional<QueueError> insert(VertexId id, Key key) {
    const Key y = mlb_.scaled(key);
    if (auto err = mlb_.insert(id, key)) return err;
    if (hot_ && y >= hot_->lo && y <= hot_->hi) {
      assert(mlb_.lists_.bucket_of(id) == hot_->flat);
      heap_.push(id, key);
      ++mlb_.counters_.heap_ops;
      maybe_overflow();
    }
    return std::nullopt;
  }

  std::optional<QueueError> decrease(VertexId id, Key new_key) {
    const Key y = mlb_.scaled(new_key);
    // A top-level hot container can also hold next-wrap keys beyond the hot
    // range; only elements inside the range are mirrored.
    const bool was_hot = hot_ && mlb_.lists_.bucket_of(id) == hot_->flat &&
                         mlb_.scaled(mlb_.key_[id]) >= hot_->lo &&
                         mlb_.scaled(mlb_.key_[id]) <= hot_->hi;
    if (auto err = mlb_.decrease(id, new_key)) return err;
    if (was_hot) {
      // Mirrored keys cannot drop below the hot range: the monotone floor is
      // inside it.
      assert(y >= hot_->lo && y <= hot_->hi);
      heap_.decrease(id, new_key);
      ++mlb_.counters_.heap_ops;
    } else if (hot_ && y >= hot_->lo && y <= hot_->hi) {
      assert(mlb_.lists_.bucket_of(id) == hot_->flat);
      heap_.push(id, new_key);
      ++mlb_.counters_.heap_ops;
      maybe_overflow();
    }
    return std::nullopt;
  }

  std::optional<Element> extract() {
    if (mlb_.count_ == 0) return std::nullopt;
    if (hot_) return pop_hot();
    if (mlb_.k_ == 1 || mlb_.level_count_[0] > 0) return mlb_.extract();
    // Bottom level exhausted: walk the expansion cascade, but mirror any
    // bucket of at most t elements into the heap instead of expanding it.
    std::uint32_t level = 1;
    while (mlb_.level_count_[level] == 0) ++level;
    mlb_.advance_active(level);
    while (true) {
      if (level > 0 &&
          mlb_.lists_.size(mlb_.flat(level, mlb_.alpha_[level])) <= t_) {
        activate(level);
        return pop_hot();
      }
      if (level == 0) break;
      mlb_.expand_one_level(level);
      --level;
    }
    return mlb_.pop_bottom();
  }

  /// Twin consistency plus the underlying bucket invariants. At the top
  /// level the container may legally hold next-wrap keys beyond the hot
  /// range; only the in-range part must mirror the heap.
  std::optional<std::string> validate() const {
    if (!hot_) {
      if (!heap_.empty()) return "heap non-empty while hot inactive";
      return mlb_.validate();
    }
    if (heap_.size() > t_) return "heap larger than threshold";
    std::vector<Element> bucket_elems;
    mlb_.lists_.for_each(hot_->flat, [&](VertexId id) {
      const Key y = mlb_.scaled(mlb_.key_[id]);
      if (y >= hot_->lo && y <= hot_->hi) bucket_elems.push_back({id, mlb_.key_[id]});
    });
    std::vector<Element> heap_elems = heap_items();
    auto by_id = [](const Element& a, const Element& b) {
      return a.id < b.id || (a.id == b.id && a.key < b.key);
    };
    std::sort(bucket_elems.begin(), bucket_elems.end(), by_id);
    std::sort(heap_elems.begin(), heap_elems.end(), by_id);
    if (bucket_elems != heap_elems) return "heap and hot bucket diverge";
    if (bucket_elems.empty()) return "hot set on an empty bucket";
    if (mlb_.scaled(mlb_.last_min_) < hot_->lo) return "monotone floor below hot range";
    return mlb_.validate(hot_->level);
  }

  std::vector<Element> heap_items() const {
    std::vector<Element> items;
    IndexedBinaryHeap copy = heap_;
    while (!copy.empty()) items.push_back(copy.pop());
    return items;
  }

 private:
  struct HotInfo {
    std::uint32_t level;
    std::uint32_t flat;
    Key lo;  // scaled range of the mirrored bucket
    Key hi;
  };

  void activate(std::uint32_t level) {
    const std::uint32_t f = mlb_.flat(level, mlb_.alpha_[level]);
    const Key lo = mlb_.range_start(level, mlb_.alpha_[level]);
    hot_ = HotInfo{level, f, lo, lo + mlb_.pow_d_[level] - 1};
    mlb_.lists_.for_each(f, [&](VertexId id) {
      heap_.push(id, mlb_.key_[id]);
      ++mlb_.counters_.heap_ops;
    });
  }

  std::optional<Element> pop_hot() {
    const Element top = heap_.pop();
    ++mlb_.counters_.heap_ops;
    const Element out = mlb_.extract_specific(top.id);
    assert(out.key == top.key);
    if (heap_.empty()) deactivate_drained();  // hot range exhausted
    return out;
  }

  /// The mirrored range drained through the heap; leave the buckets exactly
  /// as if it had been expanded while empty, so the bound chain is whole.
  /// Next-wrap keys may stay behind in a top-level container.
  void deactivate_drained() {
    const std::uint32_t level = hot_->level;
    const Key start = mlb_.range_start(level, mlb_.alpha_[level]);
    hot_.reset();
    for (std::uint32_t i = level; i-- > 0;) {
      mlb_.lower_[i] = start;
      mlb_.alpha_[i] = 0;
    }
  }

  /// Active index no lower than the last extracted minimum's position, so
  /// later monotone inserts can never land behind it.
  std::uint32_t clamp_to_floor(std::uint32_t level, std::uint32_t min_j) const {
    const Key floor_scaled = mlb_.scaled(mlb_.last_min_);
    assert(floor_scaled >= mlb_.lower_[level]);
    const auto floor_pos = static_cast<std::uint32_t>(
        (floor_scaled - mlb_.lower_[level]) / mlb_.pow_d_[level]);
    return std::min(min_j, floor_pos);
  }

  /// Deactivation by overflow happens inside an insert or decrease, with no
  /// extraction to re-anchor the monotone floor afterwards. The cascade
  /// therefore clamps every active index back to the floor position; levels
  /// whose floor bucket is empty are expanded "empty", leaving their content
  /// above the active index for the next extract to find.
  void maybe_overflow() {
    if (heap_.size() <= t_) return;
    heap_.clear();  // mirrors only; dropping them is not a heap operation
    const std::uint32_t level = hot_->level;
    const Key hi = hot_->hi;
    hot_.reset();
    // Expand the hot bucket itself. At the top level, next-wrap keys sharing
    // the container stay behind for a later wrap of the active index.
    const std::uint32_t from = mlb_.flat(level, mlb_.alpha_[level]);
    mlb_.lower_[level - 1] = mlb_.range_start(level, mlb_.alpha_[level]);
    std::uint32_t min_j = static_cast<std::uint32_t>(mlb_.d_);
    std::vector<VertexId> next_wrap;
    while (!mlb_.lists_.empty(from)) {
      const VertexId id = mlb_.lists_.pop(from);
      const Key y = mlb_.scaled(mlb_.key_[id]);
      if (y > hi) {
        next_wrap.push_back(id);
        continue;
      }
      const std::uint32_t j = static_cast<std::uint32_t>(
          (y - mlb_.lower_[level - 1]) / mlb_.pow_d_[level - 1]);
      mlb_.lists_.push(mlb_.flat(level - 1, j), id);
      --mlb_.level_count_[level];
      ++mlb_.level_count_[level - 1];
      min_j = std::min(min_j, j);
      ++mlb_.counters_.element_moves;
    }
    for (const VertexId id : next_wrap) mlb_.lists_.push(from, id);
    mlb_.alpha_[level - 1] = clamp_to_floor(level - 1, min_j);
    ++mlb_.counters_.expansions;
    for (std::uint32_t l = level - 1; l > 0; --l) {
      if (!mlb_.lists_.empty(mlb_.flat(l, mlb_.alpha_[l]))) {
        const std::uint32_t mj = mlb_.distribute_active(l);
        mlb_.alpha_[l - 1] = clamp_to_floor(l - 1, mj);
      } else {
        mlb_.lower_[l - 1] = mlb_.range_start(l, mlb_.alpha_[l]);
        mlb_.alpha_[l - 1] = clamp_to_floor(l - 1, static_cast<std::uint32_t>(mlb_.d_));
      }
      ++mlb_.counters_.expansions;
    }
  }

  MultiLevelBucketQueue mlb_;
  IndexedBinaryHeap heap_;
  std::uint64_t t_;
  std::optional<HotInfo> hot_;
};

static_assert(QueueBackend<HotQueue>);

}  // namespace monoqueue
