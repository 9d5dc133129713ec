#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ofdmim {

/// Raised for any parameter combination that violates a configuration invariant.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * OFDM-IM parameter tuple.
 *
 * N subcarriers are split into G interleaved groups of n subcarriers; k of
 * the n subcarriers in every group are active and carry M-ary symbols.
 * Construct through make() so the invariants (N = nG, N a power of two,
 * 1 <= k < n, M a power of two >= 2) are always checked.
 */
class SystemConfig {
 public:
  static SystemConfig make(std::size_t n_fft, std::size_t group_size,
                           std::size_t active, std::size_t mod_order);

  std::size_t n_fft() const noexcept { return n_fft_; }
  std::size_t group_size() const noexcept { return group_size_; }
  std::size_t active() const noexcept { return active_; }
  std::size_t groups() const noexcept { return groups_; }
  std::size_t mod_order() const noexcept { return mod_order_; }

  /// floor(log2 C(n, k)): bits carried by the activation pattern of one group.
  std::size_t index_bits() const noexcept { return index_bits_; }
  /// k * log2(M): bits carried by the symbols of one group.
  std::size_t symbol_bits() const noexcept { return symbol_bits_; }
  std::size_t bits_per_group() const noexcept { return index_bits_ + symbol_bits_; }
  /// K = kG.
  std::size_t total_active() const noexcept { return active_ * groups_; }
  /// Ensemble mean power per time sample, k/n.
  double mean_power() const noexcept {
    return static_cast<double>(active_) / static_cast<double>(group_size_);
  }

  std::string describe() const;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;

 private:
  SystemConfig() = default;

  std::size_t n_fft_ = 0;
  std::size_t group_size_ = 0;
  std::size_t active_ = 0;
  std::size_t groups_ = 0;
  std::size_t mod_order_ = 0;
  std::size_t index_bits_ = 0;
  std::size_t symbol_bits_ = 0;
};

constexpr bool is_power_of_two(std::size_t v) noexcept { return v != 0 && (v & (v - 1)) == 0; }

constexpr std::size_t log2_exact(std::size_t v) noexcept {
  std::size_t r = 0;
  while (v > 1) {
    v >>= 1;
    ++r;
  }
  return r;
}

}  // namespace ofdmim
