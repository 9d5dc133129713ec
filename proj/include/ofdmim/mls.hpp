#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ofdmim {

/**
 * Maximum-length sequence generator description.
 *
 * `polynomial` is the feedback polynomial as a bit mask over exponents,
 * including the x^degree and constant terms: x^3 + x + 1 is 0b1011.
 */
struct MlsSpec {
  std::size_t degree = 0;
  std::uint32_t polynomial = 0;

  std::size_t period() const noexcept { return (std::size_t{1} << degree) - 1; }
};

/// Built-in primitive polynomials for degrees 2..10 (x^6 + x + 1 for degree 6).
MlsSpec builtin_mls(std::size_t degree);

/// Checks every built-in entry by generating it; throws on the first bad entry.
void validate_builtin_mls_table();

/// LFSR output starting from the all-ones state, one period long.
/// Throws ConfigError when the state sequence does not have period 2^m - 1.
std::vector<std::uint8_t> gen_mls(const MlsSpec& spec);

/// Maps bits to +-1 (0 -> +1, 1 -> -1).
std::vector<int> to_bipolar(const std::vector<std::uint8_t>& bits);

/// Circular autocorrelation of a +-1 sequence at every shift.
std::vector<long> circular_autocorrelation(const std::vector<int>& seq);

/**
 * N x N cyclic Hadamard matrix (N = 2^m): first row and column all +1, the
 * (N-1) x (N-1) core holds cyclic shifts of the bipolar MLS of degree m.
 */
std::vector<std::vector<int>> cyclic_hadamard(std::size_t size);

}  // namespace ofdmim
