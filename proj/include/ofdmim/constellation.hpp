#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ofdmim {

using cplx = std::complex<double>;

/**
 * Unit-average-power M-ary constellation.
 *
 * Even log2(M) gives Gray-coded square QAM (M = 4 is the QPSK set
 * (+-1 +- j)/sqrt(2)); odd log2(M) gives Gray-coded M-PSK (M = 2 is BPSK).
 */
class Constellation {
 public:
  explicit Constellation(std::size_t order);

  std::size_t order() const noexcept { return points_.size(); }
  std::size_t bits_per_symbol() const noexcept { return bits_; }
  const cplx& operator[](std::size_t label) const { return points_.at(label); }
  std::span<const cplx> points() const noexcept { return points_; }

 private:
  std::vector<cplx> points_;
  std::size_t bits_ = 0;
};

}  // namespace ofdmim
