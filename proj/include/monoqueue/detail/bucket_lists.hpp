#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "monoqueue/core.hpp"

namespace monoqueue::detail {

/// Intrusive doubly linked lists over dense ids, one list per bucket.
/// Push, targeted erase, and head-pop are O(1); the bucket holding each id is
/// recorded so decrease-key can locate elements in O(1).
class BucketLists {
 public:
  static constexpr std::uint32_t npos = 0xffffffffu;

  BucketLists() = default;
  BucketLists(std::uint32_t n_ids, std::uint32_t n_buckets)
      : head_(n_buckets, npos),
        size_(n_buckets, 0),
        next_(n_ids, npos),
        prev_(n_ids, npos),
        bucket_(n_ids, npos) {}

  void push(std::uint32_t bucket, VertexId id) {
    assert(bucket_[id] == npos);
    next_[id] = head_[bucket];
    prev_[id] = npos;
    if (head_[bucket] != npos) prev_[head_[bucket]] = id;
    head_[bucket] = id;
    bucket_[id] = bucket;
    ++size_[bucket];
  }

  void erase(VertexId id) {
    const std::uint32_t bucket = bucket_[id];
    assert(bucket != npos);
    if (prev_[id] != npos) next_[prev_[id]] = next_[id];
    else head_[bucket] = next_[id];
    if (next_[id] != npos) prev_[next_[id]] = prev_[id];
    next_[id] = prev_[id] = npos;
    bucket_[id] = npos;
    --size_[bucket];
  }

  VertexId pop(std::uint32_t bucket) {
    const VertexId id = head_[bucket];
    assert(id != npos);
    erase(id);
    return id;
  }

  bool empty(std::uint32_t bucket) const { return head_[bucket] == npos; }
  std::uint32_t size(std::uint32_t bucket) const { return size_[bucket]; }
  std::uint32_t bucket_of(VertexId id) const { return bucket_[id]; }
  bool contains(VertexId id) const { return bucket_[id] != npos; }
  VertexId head(std::uint32_t bucket) const { return head_[bucket]; }
  VertexId next(VertexId id) const { return next_[id]; }
  std::uint32_t bucket_count() const { return static_cast<std::uint32_t>(head_.size()); }

  template <typename F>
  void for_each(std::uint32_t bucket, F&& f) const {
    for (VertexId id = head_[bucket]; id != npos; id = next_[id]) f(id);
  }

 private:
  std::vector<std::uint32_t> head_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint32_t> prev_;
  std::vector<std::uint32_t> bucket_;
};

}  // namespace monoqueue::detail
