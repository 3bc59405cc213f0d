#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hcross/errors.hpp"
#include "hcross/freq_index.hpp"

using namespace hcross;

namespace {

// Brute-force membership straight from the block definition.
bool in_block(const FreqIndex& k, const BlockIndex& s) {
  for (int j = 0; j < k.dim(); ++j) {
    const long a = std::abs(k[j]);
    const long lo = s[j] == 0 ? 0 : (1L << (s[j] - 1));
    if (a < lo || a >= (1L << s[j])) return false;
  }
  return true;
}

// Every k in the box |k_j| < 2^n whose brute-force block has |s| <= n.
std::set<FreqIndex> brute_cross(int n, int d) {
  std::set<FreqIndex> out;
  const int reach = (1 << n) - 1;
  FreqIndex k(d);
  for (int j = 0; j < d; ++j) k[j] = -reach;
  while (true) {
    long level = 0;
    for (int j = 0; j < d; ++j) {
      int s = 0;
      while ((1L << s) <= std::abs(k[j])) ++s;
      level += s;
    }
    if (level <= n) out.insert(k);
    int j = d - 1;
    while (j >= 0 && k[j] == reach) k[j--] = -reach;
    if (j < 0) break;
    ++k[j];
  }
  return out;
}

long binom(int n, int k) {
  long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

TEST_CASE("block_indices small cases") {
  CHECK(block_indices(BlockIndex{0, 0}).elements() == std::vector<FreqIndex>{FreqIndex{0, 0}});
  CHECK(block_indices(BlockIndex{1}).elements() == std::vector<FreqIndex>{FreqIndex{-1}, FreqIndex{1}});
  const auto b = block_indices(BlockIndex{2, 1});
  CHECK(b.size() == 8);
  for (const auto& k : b) {
    CHECK(std::abs(k[0]) >= 2);
    CHECK(std::abs(k[0]) <= 3);
    CHECK(std::abs(k[1]) == 1);
  }
}

TEST_CASE("block cardinality law and brute-force agreement") {
  for (int d = 1; d <= 4; ++d)
    for (int n = 0; n <= 12; ++n)
      for (const auto& s : blocks_on_layer(n, d)) {
        const auto b = block_indices(s);
        REQUIRE(b.size() == (std::size_t{1} << n));
        if (n <= 6)
          for (const auto& k : b) CHECK(in_block(k, s));
      }
}

TEST_CASE("blocks are pairwise disjoint") {
  for (int d = 1; d <= 3; ++d) {
    std::set<FreqIndex> seen;
    std::size_t total = 0;
    for (const auto& s : blocks_in_cross(8, d)) {
      for (const auto& k : block_indices(s)) {
        seen.insert(k);
        ++total;
        CHECK(block_of(k) == s);
      }
    }
    CHECK(seen.size() == total);
  }
}

TEST_CASE("cross sizes") {
  for (int d = 1; d <= 4; ++d) CHECK(cross_indices(0, d).size() == 1);
  CHECK(cross_indices(3, 1).size() == 15);
  CHECK(cross_indices(2, 2).size() == 17);
  for (int n = 0; n <= 12; ++n) {
    const auto expected = static_cast<std::uint64_t>(n) * (std::uint64_t{1} << (n + 1)) + 1;
    CHECK(cross_size(n, 2) == expected);
    if (n <= 9) CHECK(cross_indices(n, 2).size() == expected);
  }
}

TEST_CASE("cross matches brute force and is sorted") {
  for (int d = 1; d <= 3; ++d)
    for (int n = 0; n <= (d == 3 ? 4 : 6); ++n) {
      const auto q = cross_indices(n, d);
      const auto brute = brute_cross(n, d);
      REQUIRE(q.size() == brute.size());
      CHECK(std::equal(q.begin(), q.end(), brute.begin()));
      CHECK(std::is_sorted(q.begin(), q.end()));
    }
}

TEST_CASE("layers") {
  CHECK(layer_indices(0, 2).elements() == std::vector<FreqIndex>{FreqIndex{0, 0}});
  CHECK(layer_indices(3, 2).size() == 32);
  CHECK(layer_indices(2, 3).size() == 24);
  CHECK(layer_rank(0, 3) == 1);
  CHECK(layer_rank(5, 2) == 192);
  CHECK(layer_rank(1, 4) == 8);
  for (int d = 1; d <= 4; ++d)
    for (int n = 0; n <= 10; ++n) {
      const auto expected = static_cast<std::uint64_t>((1L << n) * binom(n + d - 1, d - 1));
      CHECK(layer_rank(n, d) == expected);
      if (cross_size(n, d) < 300000) CHECK(layer_indices(n, d).size() == expected);
    }
}

TEST_CASE("nesting and box containment") {
  for (int d = 1; d <= 3; ++d)
    for (int n = 1; n <= 6; ++n) {
      const auto q = cross_indices(n, d);
      const auto prev = cross_indices(n - 1, d);
      for (const auto& k : prev) CHECK(q.contains(k));
      for (const auto& k : q) CHECK(k.linf() < (1 << n));
      std::size_t sum = 0;
      for (int nu = 0; nu <= n; ++nu) sum += layer_indices(nu, d).size();
      CHECK(sum == q.size());
    }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(cross_indices(30, 3), ResourceError);
  CHECK_THROWS_AS(layer_rank(70, 4), OverflowError);
  CHECK_THROWS_AS(BlockIndex({1, -1}), InvalidArgument);
  CHECK_THROWS_AS(cross_indices(2, 5), InvalidArgument);
}
