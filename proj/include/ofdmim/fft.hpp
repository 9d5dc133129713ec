#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ofdmim {

/**
 * Iterative radix-2 decimation-in-time transform for one power-of-two size.
 *
 * The plan owns twiddles and the bit-reversal table; transforms are const and
 * may be shared between threads. Both directions are unitary (scaled by
 * 1/sqrt(N)); the inverse uses the e^{+j2pi im/N} kernel.
 */
class FftPlan {
 public:
  explicit FftPlan(std::size_t size);

  std::size_t size() const noexcept { return size_; }

  void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;
  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

  /// In-place unscaled butterfly pass; sign = +1 for the inverse kernel.
  void transform_unscaled(std::span<std::complex<double>> data, int sign) const;

 private:
  std::size_t size_;
  std::vector<std::size_t> bit_reverse_;
  std::vector<std::complex<double>> twiddles_;  // e^{-j2pi t/N}, t < N/2
};

}  // namespace ofdmim
