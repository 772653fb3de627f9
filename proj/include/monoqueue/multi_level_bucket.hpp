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

class HotQueue;

/// k-level bucket structure. Each of the k levels holds d = ceil((C'+1)^(1/k))
/// buckets; the bucket width on level i is d^i, so one bucket of level i
/// expands into the whole of level i-1. The top level is circular: its lower
/// bound advances by d^k per full wrap, which replaces the round counter.
///
/// Explicit per-level lower bounds keep the chain
///   lower(i-1) == lower(i) + alpha(i) * d^i
/// for every level, i.e. the active bucket of level i always spans exactly
/// the bounds of level i-1.
///
/// The wide-bucket heuristic is key scaling: all indexing runs on
/// y = floor(key / p) while original keys are stored for extraction.
class MultiLevelBucketQueue {
 public:
  explicit MultiLevelBucketQueue(const QueueConfig& cfg)
      : MultiLevelBucketQueue(cfg.c, cfg.k, cfg.width_multiplier, cfg.capacity_n,
                              cfg.max_key) {}

  MultiLevelBucketQueue(Key c, std::uint32_t k, std::uint64_t p,
                        std::uint32_t capacity_n,
                        Key max_key = std::numeric_limits<Key>::max() - 1)
      : k_(k), p_(p), max_key_(max_key), key_(capacity_n, 0) {
    if (c < 1) throw std::invalid_argument("MultiLevelBucketQueue: C must be >= 1");
    if (k < 1 || k > 20) throw std::invalid_argument("MultiLevelBucketQueue: k out of range");
    if (p < 1) throw std::invalid_argument("MultiLevelBucketQueue: p must be >= 1");
    if (c > (Key{1} << 62) || p > (Key{1} << 62))
      throw std::invalid_argument("MultiLevelBucketQueue: C or p too large");
    const Key c_scaled = (c + p - 1) / p;  // ceil(C/p), the scaled key span
    d_ = detail::ceil_kth_root(c_scaled + 1, k);
    if (static_cast<std::uint64_t>(k_) * d_ >= 0xfffffff0u)
      throw std::invalid_argument("MultiLevelBucketQueue: bucket count too large");
    pow_d_.resize(k_ + 1);
    for (std::uint32_t i = 0; i <= k_; ++i) {
      auto v = detail::checked_pow(d_, i);
      if (!v) throw std::invalid_argument("MultiLevelBucketQueue: d^k overflows");
      pow_d_[i] = *v;
    }
    assert(pow_d_[k_] >= c_scaled + 1);
    lists_ = detail::BucketLists(capacity_n, k_ * static_cast<std::uint32_t>(d_));
    alpha_.assign(k_, 0);
    lower_.assign(k_, 0);
    level_count_.assign(k_, 0);
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

  std::uint32_t levels() const { return k_; }
  std::uint64_t buckets_per_level() const { return d_; }
  std::uint64_t p() const { return p_; }
  std::uint64_t width(std::uint32_t level) const { return pow_d_[level]; }
  std::uint32_t active_index(std::uint32_t level) const { return alpha_[level]; }
  Key level_lower_bound(std::uint32_t level) const { return lower_[level]; }

  struct Slot {
    std::uint32_t level;
    std::uint32_t bucket;
    friend bool operator==(const Slot&, const Slot&) = default;
  };

  std::optional<Slot> slot_of(VertexId id) const {
    if (!contains(id)) return std::nullopt;
    const std::uint32_t f = lists_.bucket_of(id);
    return Slot{f / static_cast<std::uint32_t>(d_), f % static_cast<std::uint32_t>(d_)};
  }

  /// Minimum level whose current range contains the scaled key; the top level
  /// always matches through its circular index.
  Slot find_slot(Key y) const {
    for (std::uint32_t i = 0; i + 1 < k_; ++i) {
      if (y <= lower_[i] + (pow_d_[i + 1] - 1)) {
        assert(y >= lower_[i]);
        return {i, static_cast<std::uint32_t>((y - lower_[i]) / pow_d_[i])};
      }
    }
    return {k_ - 1, static_cast<std::uint32_t>((y / pow_d_[k_ - 1]) % d_)};
  }

  std::optional<QueueError> insert(VertexId id, Key key) {
    assert(!contains(id));
    const Key y = scaled(key);
    assert(y >= scaled(last_min_));
    if (y - scaled(last_min_) > pow_d_[k_] - 1) {
      return QueueError{QueueErrorKind::WindowViolation, id, key};
    }
    const Slot s = find_slot(y);
    lists_.push(flat(s.level, s.bucket), id);
    key_[id] = key;
    ++level_count_[s.level];
    ++count_;
    ++counters_.inserts;
    return std::nullopt;
  }

  std::optional<QueueError> decrease(VertexId id, Key new_key) {
    assert(contains(id) && new_key < key_[id]);
    const Key y = scaled(new_key);
    assert(y >= scaled(last_min_));
    const std::uint32_t old_flat = lists_.bucket_of(id);
    const Slot s = find_slot(y);
    key_[id] = new_key;
    if (flat(s.level, s.bucket) != old_flat) {
      assert(s.level <= old_flat / d_);  // elements only descend levels
      lists_.erase(id);
      lists_.push(flat(s.level, s.bucket), id);
      --level_count_[old_flat / d_];
      ++level_count_[s.level];
      ++counters_.element_moves;
    }
    ++counters_.decreases;
    return std::nullopt;
  }

  std::optional<Element> extract() {
    if (count_ == 0) return std::nullopt;
    if (k_ == 1) {
      // Degenerate single circular level, Dial-like.
      while (lists_.empty(flat(0, alpha_[0]))) {
        advance_top_once();
        ++counters_.empty_scan_steps;
      }
    } else if (level_count_[0] == 0) {
      expand();
    } else {
      while (lists_.empty(flat(0, alpha_[0]))) {
        ++alpha_[0];
        assert(alpha_[0] < d_);
        ++counters_.empty_scan_steps;
      }
    }
    return pop_bottom();
  }

  /// Full structural sweep; nullopt when consistent. `suspended_level`
  /// excuses the bound chain and the emptiness of one active bucket, used by
  /// the hot queue while a bucket is mirrored instead of expanded.
  std::optional<std::string> validate(
      std::optional<std::uint32_t> suspended_level = std::nullopt) const {
    const bool top_active_live = suspended_level && *suspended_level == k_ - 1;
    for (std::uint32_t i = 1; i < k_; ++i) {
      if (suspended_level && *suspended_level == i) continue;
      if (lower_[i - 1] != lower_[i] + static_cast<Key>(alpha_[i]) * pow_d_[i]) {
        return "bound chain broken at level " + std::to_string(i);
      }
    }
    std::uint64_t seen = 0;
    std::vector<std::uint64_t> per_level(k_, 0);
    for (std::uint32_t lev = 0; lev < k_; ++lev) {
      for (std::uint32_t j = 0; j < d_; ++j) {
        const std::uint32_t f = flat(lev, j);
        if (lev > 0 && lev + 1 < k_ && j == alpha_[lev] && !lists_.empty(f) &&
            !(suspended_level && *suspended_level == lev)) {
          return "active container non-empty at middle level " + std::to_string(lev);
        }
        for (VertexId id = lists_.head(f); id != detail::BucketLists::npos;
             id = lists_.next(id)) {
          ++seen;
          ++per_level[lev];
          const Key y = scaled(key_[id]);
          if (auto bad = check_membership(lev, j, y, top_active_live)) {
            return "element " + std::to_string(id) + ": " + *bad;
          }
          if (k_ > 1 && lev == 0 && j < alpha_[0]) {
            return "element behind the active bottom bucket";
          }
        }
      }
    }
    if (seen != count_) return "count mismatch";
    for (std::uint32_t lev = 0; lev < k_; ++lev) {
      if (per_level[lev] != level_count_[lev])
        return "level count mismatch at level " + std::to_string(lev);
    }
    return std::nullopt;
  }

 private:
  friend class HotQueue;

  Key scaled(Key key) const { return p_ == 1 ? key : key / p_; }
  std::uint32_t flat(std::uint32_t level, std::uint32_t j) const {
    return level * static_cast<std::uint32_t>(d_) + j;
  }
  Key range_start(std::uint32_t level, std::uint32_t j) const {
    return lower_[level] + static_cast<Key>(j) * pow_d_[level];
  }

  void advance_top_once() {
    const std::uint32_t top = k_ - 1;
    if (++alpha_[top] == d_) {
      alpha_[top] = 0;
      lower_[top] += pow_d_[k_];
    }
  }

  /// Move alpha(level) to the first non-empty bucket, counting scan steps.
  /// The active container itself is skipped: below the top it is always
  /// empty, and at the top it holds next-wrap keys which come last.
  void advance_active(std::uint32_t level) {
    if (level == k_ - 1) {
      do {
        advance_top_once();
        ++counters_.empty_scan_steps;
      } while (lists_.empty(flat(level, alpha_[level])));
    } else {
      assert(lists_.empty(flat(level, alpha_[level])));
      do {
        ++alpha_[level];
        assert(alpha_[level] < d_);
        ++counters_.empty_scan_steps;
      } while (lists_.empty(flat(level, alpha_[level])));
    }
  }

  /// Move the active bucket of `level` into the buckets of level-1, setting
  /// lower(level-1) to its range start. Returns the lowest receiving index.
  std::uint32_t distribute_active(std::uint32_t level) {
    const std::uint32_t from = flat(level, alpha_[level]);
    assert(level >= 1);
    lower_[level - 1] = range_start(level, alpha_[level]);
    std::uint32_t min_j = static_cast<std::uint32_t>(d_);
    while (!lists_.empty(from)) {
      const VertexId id = lists_.pop(from);
      const Key y = scaled(key_[id]);
      assert(y >= lower_[level - 1] && y - lower_[level - 1] < pow_d_[level]);
      const std::uint32_t j =
          static_cast<std::uint32_t>((y - lower_[level - 1]) / pow_d_[level - 1]);
      lists_.push(flat(level - 1, j), id);
      --level_count_[level];
      ++level_count_[level - 1];
      min_j = std::min(min_j, j);
      ++counters_.element_moves;
    }
    return min_j;
  }

  /// Expansion step on the extract path: aim the active index of level-1 at
  /// the lowest bucket that received elements. An extraction follows at once,
  /// which re-anchors the monotone floor inside that bucket.
  void expand_one_level(std::uint32_t level) {
    assert(!lists_.empty(flat(level, alpha_[level])));
    alpha_[level - 1] = distribute_active(level);
    ++counters_.expansions;
  }

  void expand() {
    assert(k_ >= 2 && level_count_[0] == 0 && count_ > 0);
    std::uint32_t level = 1;
    while (level_count_[level] == 0) ++level;
    advance_active(level);
    while (level > 0) {
      expand_one_level(level);
      --level;
    }
  }

  Element pop_bottom() {
    const VertexId id = lists_.pop(flat(0, alpha_[0]));
    --level_count_[0];
    --count_;
    last_min_ = key_[id];
    ++counters_.extracts;
    return Element{id, key_[id]};
  }

  Element extract_specific(VertexId id) {
    const std::uint32_t level = lists_.bucket_of(id) / static_cast<std::uint32_t>(d_);
    lists_.erase(id);
    --level_count_[level];
    --count_;
    last_min_ = key_[id];
    ++counters_.extracts;
    return Element{id, key_[id]};
  }

  std::optional<std::string> check_membership(std::uint32_t lev, std::uint32_t j,
                                              Key y, bool top_active_live) const {
    if (lev + 1 < k_) {
      const Key start = range_start(lev, j);
      if (y < start || y - start >= pow_d_[lev]) {
        return "key outside its bucket range on level " + std::to_string(lev);
      }
      return std::nullopt;
    }
    // Top level: resolve the wrap. Buckets at or before the active index hold
    // next-wrap keys, except when k == 1 (the active bucket is being drained)
    // or while the active bucket is a mirrored hot bucket, which may hold the
    // live round and next-wrap keys at once.
    std::uint64_t unwrapped = j;
    if (j < alpha_[lev] || (j == alpha_[lev] && k_ > 1 && !top_active_live)) {
      unwrapped += d_;
    }
    const Key start = lower_[lev] + unwrapped * pow_d_[lev];
    if (y >= start && y - start < pow_d_[lev]) return std::nullopt;
    if (j == alpha_[lev] && top_active_live && y >= start + pow_d_[k_] &&
        y - (start + pow_d_[k_]) < pow_d_[lev]) {
      return std::nullopt;  // next-wrap key sharing the hot container
    }
    return "key outside its top-level range";
  }

  std::uint32_t k_;
  std::uint64_t d_ = 0;
  std::uint64_t p_;
  Key max_key_;
  std::vector<Key> pow_d_;
  detail::BucketLists lists_;
  std::vector<Key> key_;
  std::vector<std::uint32_t> alpha_;
  std::vector<Key> lower_;
  std::vector<std::uint64_t> level_count_;
  Key last_min_ = 0;
  std::uint64_t count_ = 0;
  OpCounters counters_;
};

static_assert(QueueBackend<MultiLevelBucketQueue>);

}  // namespace monoqueue
