#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ofdmim {

/// Binomial coefficient C(n, k); throws std::overflow_error past 64 bits.
std::uint64_t binomial(std::size_t n, std::size_t k);

// Lexicographic ranking of sorted k-subsets of {0, ..., n-1}.
// Rank 0 is {0, 1, ..., k-1}; rank C(n,k)-1 is {n-k, ..., n-1}.
std::vector<std::size_t> unrank_subset(std::uint64_t rank, std::size_t n, std::size_t k);
std::uint64_t rank_subset(std::span<const std::size_t> subset, std::size_t n);

}  // namespace ofdmim
