#include "ofdmim/combinadic.hpp"

#include "ofdmim/random.hpp"

#include <stdexcept>
#include <string>

namespace ofdmim {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  uint128 result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step
    result = result * (n - k + i) / i;
    if (result > UINT64_MAX) throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<std::size_t> unrank_subset(std::uint64_t rank, std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("unrank_subset: k > n");
  if (rank >= binomial(n, k)) {
    throw std::out_of_range("unrank_subset: rank " + std::to_string(rank) + " out of range");
  }
  std::vector<std::size_t> subset;
  subset.reserve(k);
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    // Skip whole blocks of subsets whose smallest remaining element is `next`.
    for (;; ++next) {
      const std::uint64_t block = binomial(n - next - 1, k - slot - 1);
      if (rank < block) break;
      rank -= block;
    }
    subset.push_back(next++);
  }
  return subset;
}

std::uint64_t rank_subset(std::span<const std::size_t> subset, std::size_t n) {
  const std::size_t k = subset.size();
  std::uint64_t rank = 0;
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    const std::size_t value = subset[slot];
    if (value >= n || value < next) throw std::invalid_argument("rank_subset: not a sorted subset");
    for (; next < value; ++next) rank += binomial(n - next - 1, k - slot - 1);
    ++next;
  }
  return rank;
}

}  // namespace ofdmim
