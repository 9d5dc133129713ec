#include "ofdmim/constellation.hpp"

#include <cmath>
#include <numbers>

#include "ofdmim/config.hpp"

namespace ofdmim {

namespace {

std::size_t gray_to_binary(std::size_t g) {
  for (std::size_t shift = 1; shift < 8 * sizeof(g); shift <<= 1) g ^= g >> shift;
  return g;
}

}  // namespace

Constellation::Constellation(std::size_t order) {
  if (order < 2 || !is_power_of_two(order)) {
    throw ConfigError("constellation order must be a power of two >= 2");
  }
  bits_ = log2_exact(order);
  points_.resize(order);

  if (bits_ % 2 == 0) {
    const std::size_t half = bits_ / 2;
    const std::size_t side = std::size_t{1} << half;
    const double scale = std::sqrt(2.0 * static_cast<double>(order - 1) / 3.0);
    auto level = [&](std::size_t label) {
      return static_cast<double>(side - 1) - 2.0 * static_cast<double>(gray_to_binary(label));
    };
    for (std::size_t label = 0; label < order; ++label) {
      const std::size_t in_phase = label >> half;
      const std::size_t quadrature = label & (side - 1);
      points_[label] = cplx(level(in_phase), level(quadrature)) / scale;
    }
  } else {
    for (std::size_t label = 0; label < order; ++label) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(gray_to_binary(label)) /
                           static_cast<double>(order);
      points_[label] = std::polar(1.0, angle);
    }
    if (order == 2) points_ = {cplx(1.0, 0.0), cplx(-1.0, 0.0)};
  }
}

}  // namespace ofdmim
