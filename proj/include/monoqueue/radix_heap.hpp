#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoqueue/core.hpp"
#include "monoqueue/detail/bucket_lists.hpp"
#include "monoqueue/detail/intmath.hpp"

namespace monoqueue {

/// One-level radix heap: k = ceil(lg(C+1)) + 2 buckets of exponentially
/// growing width. Bucket i accepts keys in (U(i-1), U(i)]; the bounds slide
/// up on extract-min so the minimum keys drain toward bucket 1 (width 1).
/// An element's bucket index never increases, which bounds its lifetime
/// relocations by k.
class RadixHeap {
 public:
  explicit RadixHeap(const QueueConfig& cfg)
      : RadixHeap(cfg.c, cfg.max_key, cfg.capacity_n) {}

  RadixHeap(Key c, Key max_key, std::uint32_t capacity_n)
      : c_(c), max_key_(max_key), key_(capacity_n, 0) {
    if (c < 1) throw std::invalid_argument("RadixHeap: C must be >= 1");
    if (max_key < c) throw std::invalid_argument("RadixHeap: max_key must be >= C");
    if (max_key > (Key{1} << 62)) throw std::invalid_argument("RadixHeap: max_key too large");
    k_ = detail::ceil_log2(c + 1) + 2;
    widths_.assign(k_ + 1, 0);
    widths_[1] = 1;
    for (std::uint32_t i = 2; i < k_; ++i) widths_[i] = Key{1} << (i - 2);
    widths_[k_] = max_key + 1;
    u_.assign(k_ + 1, 0);
    for (std::uint32_t i = 1; i < k_; ++i)
      u_[i] = static_cast<std::int64_t>((Key{1} << (i - 1)) - 1);
    u_[k_] = static_cast<std::int64_t>(max_key + 1);
    lists_ = detail::BucketLists(capacity_n, k_ + 1);  // bucket 0 unused
  }

  std::size_t size() const { return count_; }
  bool contains(VertexId id) const { return lists_.contains(id); }
  Key key_of(VertexId id) const {
    assert(contains(id));
    return key_[id];
  }
  Key max_key() const { return max_key_; }
  const OpCounters& counters() const { return counters_; }
  Key last_min() const { return last_min_; }

  std::uint32_t bucket_count() const { return k_; }
  std::uint32_t bucket_of(VertexId id) const { return lists_.bucket_of(id); }
  Key bucket_width(std::uint32_t i) const { return widths_[i]; }
  std::int64_t upper_bound(std::uint32_t i) const {
    return i == 0 ? u0() : u_[i];
  }

  std::optional<QueueError> insert(VertexId id, Key key) {
    assert(!contains(id) && key >= last_min_ && key <= max_key_);
    place(id, key, k_);
    key_[id] = key;
    ++count_;
    ++counters_.inserts;
    return std::nullopt;
  }

  std::optional<QueueError> decrease(VertexId id, Key new_key) {
    assert(contains(id) && new_key < key_[id] && new_key >= last_min_);
    const std::uint32_t j = lists_.bucket_of(id);
    key_[id] = new_key;
    const std::uint32_t nb = scan_down(new_key, j);
    assert(nb <= j);
    if (nb != j) {
      lists_.erase(id);
      lists_.push(nb, id);
      ++counters_.element_moves;
    }
    ++counters_.decreases;
    return std::nullopt;
  }

  std::optional<Element> extract() {
    if (count_ == 0) return std::nullopt;
    if (!lists_.empty(1)) {
      // Width-1 bucket: a single key value, no redistribution.
      const VertexId id = lists_.pop(1);
      assert(static_cast<std::int64_t>(key_[id]) == u_[1]);
      return finish_extract(id);
    }
    std::uint32_t j = 1;
    while (lists_.empty(j)) {
      ++counters_.empty_scan_steps;
      ++j;
    }
    // Drain bucket j, isolating one minimum-key element.
    transient_.clear();
    VertexId min_id = kNoVertex;
    while (!lists_.empty(j)) {
      const VertexId id = lists_.pop(j);
      if (min_id == kNoVertex || key_[id] < key_[min_id]) {
        if (min_id != kNoVertex) transient_.push_back(min_id);
        min_id = id;
      } else {
        transient_.push_back(id);
      }
    }
    // Slide the bounds up from the new minimum, clamped at U(j), and refill
    // the buckets below j.
    std::int64_t prev = static_cast<std::int64_t>(key_[min_id]) - 1;
    for (std::uint32_t i = 1; i < j; ++i) {
      prev = std::min(prev + static_cast<std::int64_t>(widths_[i]), u_[j]);
      u_[i] = prev;
    }
    for (const VertexId id : transient_) {
      place(id, key_[id], j - 1);
      ++counters_.element_moves;
    }
    return finish_extract(min_id);
  }

  std::optional<std::string> validate() const {
    std::uint64_t seen = 0;
    for (std::uint32_t b = 1; b <= k_; ++b) {
      const std::int64_t lo = b == 1 ? u0() : u_[b - 1];
      if (lo >= u_[b] && !lists_.empty(b)) {
        return "bucket " + std::to_string(b) + " has an empty range but holds elements";
      }
      Key first_key = 0;
      bool have_first = false;
      for (VertexId id = lists_.head(b); id != detail::BucketLists::npos;
           id = lists_.next(id)) {
        ++seen;
        const auto y = static_cast<std::int64_t>(key_[id]);
        if (y <= lo || y > u_[b]) {
          return "key " + std::to_string(key_[id]) + " outside bucket " +
                 std::to_string(b) + " range";
        }
        if (b == 1) {
          if (!have_first) {
            first_key = key_[id];
            have_first = true;
          } else if (key_[id] != first_key) {
            return "bucket 1 holds two distinct keys";
          }
        }
      }
    }
    if (seen != count_) return "count mismatch";
    return std::nullopt;
  }

 private:
  std::int64_t u0() const { return static_cast<std::int64_t>(last_min_) - 1; }

  std::uint32_t scan_down(Key key, std::uint32_t from) const {
    const auto y = static_cast<std::int64_t>(key);
    std::uint32_t i = from;
    while (i >= 1 && u_[i] >= y) --i;
    return i + 1;
  }

  void place(VertexId id, Key key, std::uint32_t from) {
    lists_.push(scan_down(key, from), id);
  }

  std::optional<Element> finish_extract(VertexId id) {
    last_min_ = key_[id];
    --count_;
    ++counters_.extracts;
    return Element{id, key_[id]};
  }

  Key c_;
  Key max_key_;
  std::uint32_t k_ = 0;
  std::vector<Key> widths_;
  std::vector<std::int64_t> u_;
  detail::BucketLists lists_;
  std::vector<Key> key_;
  std::vector<VertexId> transient_;
  Key last_min_ = 0;
  std::uint64_t count_ = 0;
  OpCounters counters_;
};

static_assert(QueueBackend<RadixHeap>);

/// Two-level radix heap: k = ceil(log_D(C+1)) + 1 buckets of width D^i, each
/// split into D inner buckets. Extract-min relocates only the first non-empty
/// inner bucket of the first non-empty bucket.
///
/// Inner grids are anchored at each bucket's upper bound, which only moves
/// while the bucket is empty (bounds below the redistribution source) or by a
/// whole number of inner widths (the source bucket itself), so stored inner
/// indices never go stale.
class TwoLevelRadixHeap {
 public:
  explicit TwoLevelRadixHeap(const QueueConfig& cfg)
      : TwoLevelRadixHeap(cfg.c, cfg.max_key, cfg.delta, cfg.capacity_n) {}

  TwoLevelRadixHeap(Key c, Key max_key, std::uint64_t delta, std::uint32_t capacity_n)
      : c_(c), max_key_(max_key), delta_(delta), key_(capacity_n, 0) {
    if (c < 1) throw std::invalid_argument("TwoLevelRadixHeap: C must be >= 1");
    if (delta < 2) throw std::invalid_argument("TwoLevelRadixHeap: delta must be >= 2");
    if (max_key < c) throw std::invalid_argument("TwoLevelRadixHeap: max_key must be >= C");
    if (max_key > (Key{1} << 61)) throw std::invalid_argument("TwoLevelRadixHeap: max_key too large");
    k_ = detail::ceil_log(delta, c + 1) + 1;
    widths_.assign(k_ + 1, 0);
    inner_width_.assign(k_ + 1, 0);
    u_.assign(k_ + 1, 0);
    std::int64_t acc = -1;
    for (std::uint32_t i = 1; i < k_; ++i) {
      const auto w = detail::checked_pow(delta, i);
      if (!w) throw std::invalid_argument("TwoLevelRadixHeap: delta^k overflows");
      widths_[i] = *w;
      inner_width_[i] = *w / delta;
      acc += static_cast<std::int64_t>(*w);
      u_[i] = acc;
    }
    widths_[k_] = max_key + 1;
    inner_width_[k_] = (max_key + 1) / delta + 1;  // covers the catch-all range
    u_[k_] = static_cast<std::int64_t>(max_key + 1);
    lists_ = detail::BucketLists(
        capacity_n, static_cast<std::uint32_t>(k_ * delta_));
    bucket_size_.assign(k_ + 1, 0);
    nonempty_inners_.assign(k_ + 1, 0);
  }

  std::size_t size() const { return count_; }
  bool contains(VertexId id) const { return lists_.contains(id); }
  Key key_of(VertexId id) const {
    assert(contains(id));
    return key_[id];
  }
  Key max_key() const { return max_key_; }
  const OpCounters& counters() const { return counters_; }
  Key last_min() const { return last_min_; }

  std::uint32_t bucket_count() const { return k_; }
  std::uint64_t delta() const { return delta_; }
  Key bucket_width(std::uint32_t i) const { return widths_[i]; }
  std::int64_t upper_bound(std::uint32_t i) const {
    return i == 0 ? static_cast<std::int64_t>(last_min_) - 1 : u_[i];
  }
  std::uint32_t bucket_of(VertexId id) const {
    return lists_.bucket_of(id) / static_cast<std::uint32_t>(delta_) + 1;
  }
  std::uint32_t inner_of(VertexId id) const {
    return lists_.bucket_of(id) % static_cast<std::uint32_t>(delta_) + 1;
  }

  std::optional<QueueError> insert(VertexId id, Key key) {
    assert(!contains(id) && key >= last_min_ && key <= max_key_);
    place(id, key, k_);
    key_[id] = key;
    ++count_;
    ++counters_.inserts;
    return std::nullopt;
  }

  std::optional<QueueError> decrease(VertexId id, Key new_key) {
    assert(contains(id) && new_key < key_[id] && new_key >= last_min_);
    const std::uint32_t b = bucket_of(id);
    key_[id] = new_key;
    const std::uint32_t nb = scan_down(new_key, b);
    assert(nb <= b);
    const std::uint32_t nf = flat(nb, logical_inner(nb, new_key));
    if (nf != lists_.bucket_of(id)) {
      erase_from(id);
      push_to(nb, nf, id);
      if (nb < b) ++counters_.element_moves;  // inner-only moves are not descents
    }
    ++counters_.decreases;
    return std::nullopt;
  }

  std::optional<Element> extract() {
    if (count_ == 0) return std::nullopt;
    std::uint32_t b = 1;
    while (bucket_size_[b] == 0) {
      ++counters_.empty_scan_steps;
      ++b;
    }
    std::uint32_t inner = 1;
    while (lists_.empty(flat(b, inner))) {
      ++counters_.empty_scan_steps;
      ++inner;
      assert(inner <= delta_);
    }
    const std::uint32_t f = flat(b, inner);
    if (b == 1 || lists_.size(f) == 1) {
      // Bucket 1 inners hold a single key value; a singleton inner bucket is
      // its own minimum. Either way nothing is relocated.
      const VertexId id = lists_.head(f);
      erase_from(id);
      return finish_extract(id);
    }
    // Drain this inner bucket only, isolating one minimum-key element.
    transient_.clear();
    VertexId min_id = kNoVertex;
    while (!lists_.empty(f)) {
      const VertexId id = lists_.head(f);
      erase_from(id);
      if (min_id == kNoVertex || key_[id] < key_[min_id]) {
        if (min_id != kNoVertex) transient_.push_back(min_id);
        min_id = id;
      } else {
        transient_.push_back(id);
      }
    }
    // Bounds slide up from the isolated minimum, clamped at this inner
    // bucket's range top; everything else lands strictly below bucket b.
    const std::int64_t top = u_[b] - static_cast<std::int64_t>(delta_ - inner) *
                                         static_cast<std::int64_t>(inner_width_[b]);
    std::int64_t prev = static_cast<std::int64_t>(key_[min_id]) - 1;
    for (std::uint32_t i = 1; i < b; ++i) {
      prev = std::min(prev + static_cast<std::int64_t>(widths_[i]), top);
      u_[i] = prev;
    }
    // Below the catch-all bucket the slide always reaches the inner top, so
    // relocated keys land strictly lower. Inside the catch-all the window
    // guarantee (keys span at most C) plays that role instead.
    assert(b == k_ || u_[b - 1] == top);
    for (const VertexId id : transient_) {
      const std::uint32_t nb = scan_down(key_[id], b - 1);
      push_to(nb, flat(nb, logical_inner(nb, key_[id])), id);
      if (nb < b) ++counters_.element_moves;
    }
    return finish_extract(min_id);
  }

  std::optional<std::string> validate() const {
    std::uint64_t seen = 0;
    for (std::uint32_t b = 1; b <= k_; ++b) {
      const std::int64_t lo = b == 1 ? static_cast<std::int64_t>(last_min_) - 1
                                     : u_[b - 1];
      std::uint64_t in_bucket = 0, nonempty = 0;
      for (std::uint32_t inner = 1; inner <= delta_; ++inner) {
        const std::uint32_t f = flat(b, inner);
        if (!lists_.empty(f)) ++nonempty;
        for (VertexId id = lists_.head(f); id != detail::BucketLists::npos;
             id = lists_.next(id)) {
          ++seen;
          ++in_bucket;
          const auto y = static_cast<std::int64_t>(key_[id]);
          if (y <= lo || y > u_[b])
            return "key outside bucket " + std::to_string(b) + " range";
          if (logical_inner(b, key_[id]) != inner)
            return "key in the wrong inner bucket of bucket " + std::to_string(b);
        }
      }
      if (in_bucket != bucket_size_[b]) return "bucket size tally mismatch";
      if (nonempty != nonempty_inners_[b]) return "non-empty inner tally mismatch";
    }
    if (seen != count_) return "count mismatch";
    return std::nullopt;
  }

 private:
  std::uint32_t flat(std::uint32_t b, std::uint32_t inner) const {
    return (b - 1) * static_cast<std::uint32_t>(delta_) + (inner - 1);
  }

  /// 1-based inner index, anchored at the bucket's upper bound.
  std::uint32_t logical_inner(std::uint32_t b, Key key) const {
    const std::int64_t back = u_[b] - static_cast<std::int64_t>(key);
    assert(back >= 0);
    const auto q = static_cast<std::uint64_t>(back) / inner_width_[b];
    assert(q < delta_);
    return static_cast<std::uint32_t>(delta_ - q);
  }

  std::uint32_t scan_down(Key key, std::uint32_t from) const {
    const auto y = static_cast<std::int64_t>(key);
    std::uint32_t i = from;
    while (i >= 1 && u_[i] >= y) --i;
    return i + 1;
  }

  void place(VertexId id, Key key, std::uint32_t from) {
    const std::uint32_t b = scan_down(key, from);
    push_to(b, flat(b, logical_inner(b, key)), id);
  }

  void push_to(std::uint32_t b, std::uint32_t f, VertexId id) {
    if (lists_.empty(f)) ++nonempty_inners_[b];
    lists_.push(f, id);
    ++bucket_size_[b];
  }

  void erase_from(VertexId id) {
    const std::uint32_t f = lists_.bucket_of(id);
    const std::uint32_t b = f / static_cast<std::uint32_t>(delta_) + 1;
    lists_.erase(id);
    if (lists_.empty(f)) --nonempty_inners_[b];
    --bucket_size_[b];
  }

  std::optional<Element> finish_extract(VertexId id) {
    last_min_ = key_[id];
    --count_;
    ++counters_.extracts;
    return Element{id, key_[id]};
  }

  Key c_;
  Key max_key_;
  std::uint64_t delta_;
  std::uint32_t k_ = 0;
  std::vector<Key> widths_;
  std::vector<Key> inner_width_;
  std::vector<std::int64_t> u_;
  detail::BucketLists lists_;
  std::vector<Key> key_;
  std::vector<std::uint64_t> bucket_size_;
  std::vector<std::uint64_t> nonempty_inners_;
  std::vector<VertexId> transient_;
  Key last_min_ = 0;
  std::uint64_t count_ = 0;
  OpCounters counters_;
};

static_assert(QueueBackend<TwoLevelRadixHeap>);

}  // namespace monoqueue
