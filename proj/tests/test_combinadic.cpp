#include <doctest.h>

#include <stdexcept>

#include "ofdmim/combinadic.hpp"
#include "oracles.hpp"

using namespace ofdmim;

TEST_CASE("binomial coefficients") {
  CHECK(binomial(16, 2) == 120);
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(16, 14) == 120);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK_THROWS_AS(binomial(200, 100), std::overflow_error);
}

TEST_CASE("rank 0 and the last rank") {
  CHECK(unrank_subset(0, 16, 2) == std::vector<std::size_t>{0, 1});
  CHECK(unrank_subset(0, 16, 4) == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(unrank_subset(119, 16, 2) == std::vector<std::size_t>{14, 15});
  CHECK_THROWS_AS(unrank_subset(120, 16, 2), std::out_of_range);
}

TEST_CASE("unranking matches lexicographic enumeration") {
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{16, 2}, {8, 3}, {6, 6}, {7, 1}, {10, 5}}) {
    CAPTURE(n);
    CAPTURE(k);
    const auto subsets = oracle::all_subsets(n, k);
    REQUIRE(subsets.size() == binomial(n, k));
    for (std::size_t r = 0; r < subsets.size(); ++r) {
      CHECK(unrank_subset(r, n, k) == subsets[r]);
      CHECK(rank_subset(subsets[r], n) == r);
    }
  }
}

TEST_CASE("every p1-bit word round-trips for n=16, k=2") {
  // p1 = floor(log2 120) = 6
  for (std::uint64_t word = 0; word < 64; ++word) {
    const auto s = unrank_subset(word, 16, 2);
    CHECK(rank_subset(s, 16) == word);
  }
}

TEST_CASE("rank_subset rejects malformed input") {
  const std::vector<std::size_t> unsorted{3, 1};
  const std::vector<std::size_t> out_of_range{1, 16};
  const std::vector<std::size_t> repeated{2, 2};
  CHECK_THROWS_AS(rank_subset(unsorted, 16), std::invalid_argument);
  CHECK_THROWS_AS(rank_subset(out_of_range, 16), std::invalid_argument);
  CHECK_THROWS_AS(rank_subset(repeated, 16), std::invalid_argument);
}
