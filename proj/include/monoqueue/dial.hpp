#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoqueue/core.hpp"
#include "monoqueue/detail/bucket_lists.hpp"

namespace monoqueue {

/// Dial's 1-level bucket structure with C+1 circular buckets.
///
/// An element with key y lives in bucket y mod (C+1); since all live keys fit
/// in the window [last_min, last_min + C], each bucket holds a single key
/// value and the cyclic scan from the active index meets keys in order.
/// Keys are stored explicitly per element, so no round counter is needed.
class DialQueue {
 public:
  explicit DialQueue(const QueueConfig& cfg)
      : DialQueue(cfg.c, cfg.capacity_n, cfg.max_key) {}

  DialQueue(Key c, std::uint32_t capacity_n,
            Key max_key = std::numeric_limits<Key>::max() - 1)
      : c_(c),
        max_key_(max_key),
        lists_(capacity_n, static_cast<std::uint32_t>(c + 1)),
        key_(capacity_n, 0) {
    if (c < 1) throw std::invalid_argument("DialQueue: C must be >= 1");
    if (c >= 0xfffffff0u) throw std::invalid_argument("DialQueue: C too large");
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
  Key c() const { return c_; }
  std::uint32_t bucket_count() const { return static_cast<std::uint32_t>(c_ + 1); }
  std::uint32_t alpha() const { return alpha_; }
  std::uint32_t bucket_of(VertexId id) const { return lists_.bucket_of(id); }

  std::optional<QueueError> insert(VertexId id, Key key) {
    assert(!contains(id) && key >= last_min_);
    if (key > last_min_ + c_) return QueueError{QueueErrorKind::WindowViolation, id, key};
    lists_.push(slot(key), id);
    key_[id] = key;
    ++count_;
    ++counters_.inserts;
    return std::nullopt;
  }

  std::optional<QueueError> decrease(VertexId id, Key new_key) {
    assert(contains(id) && new_key < key_[id] && new_key >= last_min_);
    lists_.erase(id);
    lists_.push(slot(new_key), id);
    key_[id] = new_key;
    ++counters_.decreases;
    ++counters_.element_moves;
    return std::nullopt;
  }

  std::optional<Element> extract() {
    if (count_ == 0) return std::nullopt;
    while (lists_.empty(alpha_)) {
      alpha_ = (alpha_ + 1) % bucket_count();
      ++counters_.empty_scan_steps;
    }
    const VertexId id = lists_.pop(alpha_);
    --count_;
    last_min_ = key_[id];
    ++counters_.extracts;
    return Element{id, key_[id]};
  }

  /// Full structural sweep; nullopt when consistent.
  std::optional<std::string> validate() const {
    std::uint64_t seen = 0;
    Key lo = std::numeric_limits<Key>::max(), hi = 0;
    for (std::uint32_t b = 0; b < bucket_count(); ++b) {
      for (VertexId id = lists_.head(b); id != detail::BucketLists::npos;
           id = lists_.next(id)) {
        ++seen;
        if (slot(key_[id]) != b)
          return "element " + std::to_string(id) + " in bucket " + std::to_string(b) +
                 " but key " + std::to_string(key_[id]);
        lo = std::min(lo, key_[id]);
        hi = std::max(hi, key_[id]);
      }
    }
    if (seen != count_) return "count mismatch";
    if (seen > 0 && hi - lo > c_) return "window wider than C";
    return std::nullopt;
  }

 private:
  std::uint32_t slot(Key key) const {
    return static_cast<std::uint32_t>(key % bucket_count());
  }

  Key c_;
  Key max_key_;
  detail::BucketLists lists_;
  std::vector<Key> key_;
  std::uint32_t alpha_ = 0;
  Key last_min_ = 0;
  std::uint64_t count_ = 0;
  OpCounters counters_;
};

static_assert(QueueBackend<DialQueue>);

}  // namespace monoqueue
