#include <doctest.h>

#include <set>
#include <vector>

#include "fibersim/debruijn.hpp"

using namespace fibersim;

namespace {

// Counts every cyclic window of `order` quaternary symbols; the De Bruijn
// property holds iff each of the 4^order windows appears exactly once.
bool all_windows_unique(const std::vector<std::uint8_t>& seq, unsigned order) {
  const std::size_t n = seq.size();
  std::vector<std::uint32_t> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t word = 0;
    for (unsigned j = 0; j < order; ++j) {
      word = (word << 2) | seq[(i + j) % n];
    }
    ++counts[word];
  }
  for (auto c : counts) {
    if (c != 1) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("debruijn") {

TEST_CASE("order 7 has length 4^7 and the De Bruijn property") {
  const auto seq = debruijn_q4_order7(0);
  REQUIRE(seq.size() == 16384);
  CHECK(all_windows_unique(seq, 7));
}

TEST_CASE("order 7 variants keep the property") {
  for (std::uint64_t seed : {1ull, 17ull, 123456789ull}) {
    const auto seq = debruijn_q4_order7(seed);
    REQUIRE(seq.size() == 16384);
    CHECK(all_windows_unique(seq, 7));
  }
}

TEST_CASE("order 2 exhaustive: all 16 pairs appear once") {
  const auto seq = debruijn_sequence(2, 0);
  REQUIRE(seq.size() == 16);
  CHECK(all_windows_unique(seq, 2));
  std::set<int> pairs;
  for (std::size_t i = 0; i < 16; ++i) {
    pairs.insert(seq[i] * 4 + seq[(i + 1) % 16]);
  }
  CHECK(pairs.size() == 16);
}

TEST_CASE("distinct variant seeds give distinct sequences") {
  std::set<std::vector<std::uint8_t>> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    seen.insert(debruijn_sequence(4, seed));
  }
  CHECK(seen.size() == 64);
}

TEST_CASE("generation is deterministic") {
  CHECK(debruijn_sequence(3, 9) == debruijn_sequence(3, 9));
}

TEST_CASE("symbols stay within the quaternary alphabet") {
  const auto seq = debruijn_sequence(5, 99);
  for (auto s : seq) CHECK(s <= 3);
}

}  // TEST_SUITE
