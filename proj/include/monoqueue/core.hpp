#pragma once

#include <cassert>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace monoqueue {

using VertexId = std::uint32_t;
using Key = std::uint64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Queue element: a dense vertex handle plus its integer label.
struct Element {
  VertexId id;
  Key key;
  friend bool operator==(const Element&, const Element&) = default;
};

/// Operation tallies kept by every backend. Fields only ever grow, and after
/// a balanced sequence inserts == extracts.
struct OpCounters {
  std::uint64_t inserts = 0;
  std::uint64_t extracts = 0;
  std::uint64_t decreases = 0;
  /// Active-index advances past empty buckets (the dominant bucket cost).
  std::uint64_t empty_scan_steps = 0;
  /// Bucket distributions in multi-level structures, one per level processed.
  std::uint64_t expansions = 0;
  /// Relocations of elements already stored. Bucket structures count slot
  /// changes; radix heaps count bucket-index descents.
  std::uint64_t element_moves = 0;
  /// Overflow/reference heap operations.
  std::uint64_t heap_ops = 0;
};

enum class QueueErrorKind {
  MonotonicityViolation,
  DuplicateId,
  UnknownId,
  NotADecrease,
  KeyOutOfRange,
  WindowViolation,
};

inline const char* to_string(QueueErrorKind kind) {
  switch (kind) {
    case QueueErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case QueueErrorKind::DuplicateId: return "DuplicateId";
    case QueueErrorKind::UnknownId: return "UnknownId";
    case QueueErrorKind::NotADecrease: return "NotADecrease";
    case QueueErrorKind::KeyOutOfRange: return "KeyOutOfRange";
    case QueueErrorKind::WindowViolation: return "WindowViolation";
  }
  return "?";
}

/// Failed queue operation; carries the offending id/key so the call can be
/// reproduced.
struct QueueError {
  QueueErrorKind kind;
  VertexId id;
  Key key;

  std::string describe() const {
    return std::string(to_string(kind)) + " (id=" + std::to_string(id) +
           ", key=" + std::to_string(key) + ")";
  }
  friend bool operator==(const QueueError&, const QueueError&) = default;
};

/// Construction parameters shared across the queue family. Backends read the
/// fields they care about.
struct QueueConfig {
  std::uint32_t capacity_n = 0;            ///< distinct ids, dense in [0, capacity_n)
  Key max_key = std::numeric_limits<Key>::max() - 1;
  Key c = 1;                               ///< maximum key span (max arc weight)
  std::uint32_t k = 2;                     ///< level count (multi-level buckets)
  std::uint64_t delta = 2;                 ///< inner buckets per bucket (two-level radix)
  std::uint64_t hot_threshold = 0;         ///< t (hot queue)
  std::uint64_t width_multiplier = 1;      ///< p (wide-bucket heuristic)
};

template <typename B>
concept QueueBackend = requires(B q, const B cq, VertexId id, Key key) {
  { cq.size() } -> std::convertible_to<std::size_t>;
  { cq.contains(id) } -> std::convertible_to<bool>;
  { cq.key_of(id) } -> std::convertible_to<Key>;
  { cq.max_key() } -> std::convertible_to<Key>;
  { q.insert(id, key) } -> std::same_as<std::optional<QueueError>>;
  { q.decrease(id, key) } -> std::same_as<std::optional<QueueError>>;
  { q.extract() } -> std::same_as<std::optional<Element>>;
  { cq.counters() } -> std::same_as<const OpCounters&>;
};

/// Enforces the monotone discipline on top of any backend: keys handed to
/// insert/decrease may never drop below the last extracted minimum, ids are
/// unique, and decrease must not raise a key. A decrease to the current key
/// is a no-op rather than an error.
///
/// `granularity` relaxes the monotone comparison to floor(key/p), matching
/// wide-bucket runs where only the scaled extraction order is non-decreasing.
template <QueueBackend B>
class CheckedQueue {
 public:
  explicit CheckedQueue(B backend, Key granularity = 1)
      : backend_(std::move(backend)), granularity_(granularity) {
    assert(granularity_ >= 1);
  }

  std::optional<QueueError> insert(VertexId id, Key key) {
    if (backend_.contains(id)) return QueueError{QueueErrorKind::DuplicateId, id, key};
    if (key > backend_.max_key()) return QueueError{QueueErrorKind::KeyOutOfRange, id, key};
    if (scaled(key) < scaled(last_min_)) {
      return QueueError{QueueErrorKind::MonotonicityViolation, id, key};
    }
    return backend_.insert(id, key);
  }

  std::optional<QueueError> decrease(VertexId id, Key new_key) {
    if (!backend_.contains(id)) return QueueError{QueueErrorKind::UnknownId, id, new_key};
    const Key current = backend_.key_of(id);
    if (new_key > current) return QueueError{QueueErrorKind::NotADecrease, id, new_key};
    if (new_key == current) return std::nullopt;  // no-op by design
    if (scaled(new_key) < scaled(last_min_)) {
      return QueueError{QueueErrorKind::MonotonicityViolation, id, new_key};
    }
    return backend_.decrease(id, new_key);
  }

  std::optional<Element> extract() {
    auto popped = backend_.extract();
    if (popped) {
      assert(scaled(popped->key) >= scaled(last_min_));
      last_min_ = popped->key;
    }
    return popped;
  }

  Key last_min() const { return last_min_; }
  std::size_t size() const { return backend_.size(); }
  bool empty() const { return backend_.size() == 0; }
  const OpCounters& counters() const { return backend_.counters(); }
  B& backend() { return backend_; }
  const B& backend() const { return backend_; }

 private:
  Key scaled(Key key) const { return granularity_ == 1 ? key : key / granularity_; }

  B backend_;
  Key granularity_;
  Key last_min_ = 0;
};

}  // namespace monoqueue
