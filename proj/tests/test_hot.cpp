#include <catch2/catch_amalgamated.hpp>

#include "monoqueue/hot_queue.hpp"
#include "monoqueue/multi_level_bucket.hpp"
#include "monoqueue/oracle.hpp"
#include "test_support.hpp"

using namespace monoqueue;

TEST_CASE("default threshold") {
  CHECK(HotQueue::default_threshold(1, 2) == 2);
  CHECK(HotQueue::default_threshold(16, 2) == 4);
  CHECK(HotQueue::default_threshold(100, 2) == 10);
  CHECK(HotQueue::default_threshold(100, 3) == 5);
}

TEST_CASE("a small active bucket is mirrored instead of expanded") {
  CheckedQueue<HotQueue> q(HotQueue(15, 2, 1, /*t=*/2, 16));
  REQUIRE_FALSE(q.insert(0, 9));
  REQUIRE_FALSE(q.insert(1, 11));

  const auto e = q.extract();
  REQUIRE(e);
  CHECK(e->key == 9);
  CHECK(q.counters().expansions == 0);
  CHECK(q.backend().hot_active());
  CHECK(q.backend().heap_size() == 1);
  CHECK_FALSE(q.backend().validate());

  const auto e2 = q.extract();
  REQUIRE(e2);
  CHECK(e2->key == 11);
  CHECK_FALSE(q.backend().hot_active());  // drained, mirror dismissed
  CHECK(q.counters().expansions == 0);
  CHECK_FALSE(q.backend().validate());
}

TEST_CASE("inserts into the hot range hit bucket and heap; outside only the buckets") {
  CheckedQueue<HotQueue> q(HotQueue(15, 2, 1, /*t=*/3, 16));
  REQUIRE_FALSE(q.insert(0, 9));
  REQUIRE_FALSE(q.insert(1, 11));
  REQUIRE(q.extract());  // activates on {9,11}, pops 9
  REQUIRE(q.backend().hot_active());
  REQUIRE(q.backend().heap_size() == 1);

  SECTION("outside the hot range the heap is untouched") {
    REQUIRE_FALSE(q.insert(2, 13));
    CHECK(q.backend().heap_size() == 1);
    CHECK(q.backend().hot_active());
    CHECK_FALSE(q.backend().validate());
  }

  SECTION("inside the hot range both sides grow") {
    REQUIRE_FALSE(q.insert(2, 10));
    CHECK(q.backend().heap_size() == 2);
    CHECK_FALSE(q.backend().validate());
    const auto e = q.extract();
    REQUIRE(e);
    CHECK(e->key == 10);
  }

  SECTION("a decrease into the hot range mirrors the element") {
    REQUIRE_FALSE(q.insert(2, 13));
    REQUIRE_FALSE(q.decrease(2, 10));
    CHECK(q.backend().heap_size() == 2);
    CHECK_FALSE(q.backend().validate());
  }
}

TEST_CASE("growing past the threshold expands and resumes normal operation") {
  CheckedQueue<HotQueue> q(HotQueue(15, 2, 1, /*t=*/3, 16));
  REQUIRE_FALSE(q.insert(0, 8));
  REQUIRE_FALSE(q.insert(1, 9));
  REQUIRE_FALSE(q.insert(2, 11));
  REQUIRE(q.extract());  // hot on {8,9,11}, pops 8
  REQUIRE(q.backend().hot_active());

  REQUIRE_FALSE(q.insert(3, 10));  // back to 3 mirrored elements, still <= t
  REQUIRE(q.backend().hot_active());
  REQUIRE_FALSE(q.insert(4, 10));  // 4 > t: heap dropped, bucket expanded
  CHECK_FALSE(q.backend().hot_active());
  CHECK(q.backend().heap_size() == 0);
  CHECK(q.counters().expansions == 1);
  CHECK_FALSE(q.backend().validate());

  std::vector<Key> rest;
  while (auto e = q.extract()) rest.push_back(e->key);
  CHECK(rest == std::vector<Key>{9, 10, 10, 11});
}

TEST_CASE("threshold zero never activates and matches plain buckets exactly") {
  for (std::uint64_t seed = 300; seed < 305; ++seed) {
    const Key c = 63;
    const auto ops = mqtest::gen_sequence(seed, 2000, c, 96);
    CheckedQueue<MultiLevelBucketQueue> plain(MultiLevelBucketQueue(c, 2, 1, 96));
    CheckedQueue<HotQueue> hot(HotQueue(c, 2, 1, 0, 96));
    const auto a = mqtest::apply_sequence(plain, ops);
    const auto b = mqtest::apply_sequence(hot, ops, [](const HotQueue& h) {
      if (h.hot_active()) throw std::runtime_error("t=0 must never go hot");
    });
    REQUIRE(mqtest::keys_of(a) == mqtest::keys_of(b));
    CHECK(plain.counters().expansions == hot.counters().expansions);
    CHECK(hot.counters().heap_ops == 0);
  }
}

TEST_CASE("a saturating threshold replaces every expansion") {
  const auto ops = mqtest::gen_sequence(417, 2000, 63, 96);
  CheckedQueue<HotQueue> q(HotQueue(63, 2, 1, /*t=*/96, 96));
  mqtest::apply_sequence(q, ops);
  CHECK(q.counters().expansions == 0);
}

TEST_CASE("twin invariant and expansion savings on random runs") {
  for (const std::uint64_t t : {1ull, 2ull, 8ull}) {
    for (std::uint64_t seed = 500; seed < 503; ++seed) {
      const Key c = 255;
      const auto ops = mqtest::gen_sequence(seed + t * 31, 3000, c, 128);
      CheckedQueue<OracleQueue> oracle(OracleQueue(128));
      CheckedQueue<MultiLevelBucketQueue> plain(MultiLevelBucketQueue(c, 3, 1, 128));
      CheckedQueue<HotQueue> hot(HotQueue(c, 3, 1, t, 128));
      const auto expected = mqtest::apply_sequence(oracle, ops);
      mqtest::apply_sequence(plain, ops);
      const auto got = mqtest::apply_sequence(hot, ops, [](const HotQueue& h) {
        if (const auto problem = h.validate()) throw std::runtime_error(*problem);
      });
      REQUIRE(mqtest::keys_of(got) == mqtest::keys_of(expected));
      CHECK(hot.counters().expansions <= plain.counters().expansions);
    }
  }
}
