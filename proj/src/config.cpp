#include "ofdmim/config.hpp"

#include <string>

#include "ofdmim/combinadic.hpp"

namespace ofdmim {

SystemConfig SystemConfig::make(std::size_t n_fft, std::size_t group_size, std::size_t active,
                                std::size_t mod_order) {
  if (!is_power_of_two(n_fft) || n_fft < 2) {
    throw ConfigError("N must be a power of two >= 2, got " + std::to_string(n_fft));
  }
  if (group_size == 0 || n_fft % group_size != 0) {
    throw ConfigError("group size n must divide N (N = nG), got n=" + std::to_string(group_size) +
                      " for N=" + std::to_string(n_fft));
  }
  if (active < 1 || active >= group_size) {
    throw ConfigError("active count k must satisfy 1 <= k < n, got k=" + std::to_string(active) +
                      " n=" + std::to_string(group_size));
  }
  if (mod_order < 2 || !is_power_of_two(mod_order)) {
    throw ConfigError("modulation order M must be a power of two >= 2, got " +
                      std::to_string(mod_order));
  }

  SystemConfig cfg;
  cfg.n_fft_ = n_fft;
  cfg.group_size_ = group_size;
  cfg.active_ = active;
  cfg.groups_ = n_fft / group_size;
  cfg.mod_order_ = mod_order;

  const std::uint64_t subsets = binomial(group_size, active);
  std::size_t p1 = 0;
  while (p1 + 1 < 64 && (std::uint64_t{1} << (p1 + 1)) <= subsets) ++p1;
  cfg.index_bits_ = p1;
  cfg.symbol_bits_ = active * log2_exact(mod_order);
  return cfg;
}

std::string SystemConfig::describe() const {
  return "N=" + std::to_string(n_fft_) + " n=" + std::to_string(group_size_) +
         " k=" + std::to_string(active_) + " G=" + std::to_string(groups_) +
         " M=" + std::to_string(mod_order_);
}

}  // namespace ofdmim
