#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>

namespace monoqueue::detail {

/// base^exp, or nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t result = 1;
  while (exp > 0) {
    if (exp & 1) {
      if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
        return std::nullopt;
      result *= base;
    }
    exp >>= 1;
    if (exp > 0) {
      if (base != 0 && base > std::numeric_limits<std::uint64_t>::max() / base)
        return std::nullopt;
      base *= base;
    }
  }
  return result;
}

/// Smallest r >= 1 with r^k >= x. Pure integer arithmetic.
inline std::uint64_t ceil_kth_root(std::uint64_t x, std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("ceil_kth_root: k must be >= 1");
  if (x <= 1) return 1;
  if (k == 1) return x;
  std::uint64_t lo = 1, hi = 2;
  while (true) {
    auto p = checked_pow(hi, k);
    if (p && *p < x) {
      lo = hi;
      hi *= 2;
    } else {
      break;
    }
  }
  while (lo + 1 < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    auto p = checked_pow(mid, k);
    if (p && *p < x) lo = mid; else hi = mid;
  }
  return hi;
}

/// Smallest t with 2^t >= x (x >= 1); ceil(lg x).
inline std::uint32_t ceil_log2(std::uint64_t x) {
  if (x <= 1) return 0;
  return static_cast<std::uint32_t>(std::bit_width(x - 1));
}

/// Smallest t with base^t >= x (base >= 2, x >= 1).
inline std::uint32_t ceil_log(std::uint64_t base, std::uint64_t x) {
  if (base < 2) throw std::invalid_argument("ceil_log: base must be >= 2");
  std::uint32_t t = 0;
  std::uint64_t v = 1;
  while (v < x) {
    if (v > std::numeric_limits<std::uint64_t>::max() / base)
      throw std::overflow_error("ceil_log: overflow");
    v *= base;
    ++t;
  }
  return t;
}

/// FNV-1a over a byte-sized chunk stream; used for distance checksums.
struct Fnv1a {
  std::uint64_t state = 1469598103934665603ULL;
  void mix(std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      state ^= (value >> (8 * i)) & 0xffULL;
      state *= 1099511628211ULL;
    }
  }
};

}  // namespace monoqueue::detail
