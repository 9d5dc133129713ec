#include "ofdmim/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ofdmim/config.hpp"

namespace ofdmim {

FftPlan::FftPlan(std::size_t size) : size_(size), bit_reverse_(size) {
  if (!is_power_of_two(size)) throw ConfigError("FFT size must be a power of two");
  const std::size_t bits = log2_exact(size);
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
  twiddles_.resize(size / 2);
  for (std::size_t t = 0; t < size / 2; ++t) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(size);
    twiddles_[t] = {std::cos(angle), std::sin(angle)};
  }
}

void FftPlan::transform_unscaled(std::span<std::complex<double>> data, int sign) const {
  if (data.size() != size_) throw std::invalid_argument("FftPlan: length mismatch");
  for (std::size_t i = 0; i < size_; ++i) {
    const std::size_t r = bit_reverse_[i];
    if (i < r) std::swap(data[i], data[r]);
  }
  for (std::size_t len = 2; len <= size_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = size_ / len;
    for (std::size_t start = 0; start < size_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> w = twiddles_[j * stride];
        if (sign > 0) w = std::conj(w);
        const std::complex<double> odd = w * data[start + j + half];
        data[start + j + half] = data[start + j] - odd;
        data[start + j] += odd;
      }
    }
  }
}

void FftPlan::inverse(std::span<const std::complex<double>> in,
                      std::span<std::complex<double>> out) const {
  if (in.size() != size_ || out.size() != size_) throw std::invalid_argument("FftPlan: length mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  transform_unscaled(out, +1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(size_));
  for (auto& v : out) v *= scale;
}

void FftPlan::forward(std::span<const std::complex<double>> in,
                      std::span<std::complex<double>> out) const {
  if (in.size() != size_ || out.size() != size_) throw std::invalid_argument("FftPlan: length mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  transform_unscaled(out, -1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(size_));
  for (auto& v : out) v *= scale;
}

}  // namespace ofdmim
