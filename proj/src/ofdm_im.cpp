#include "ofdmim/ofdm_im.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ofdmim/combinadic.hpp"
#include "ofdmim/fft.hpp"

namespace ofdmim {

GroupSap::GroupSap(std::vector<std::size_t> indices, const SystemConfig& cfg)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (indices_.size() != cfg.active()) {
    throw ConfigError("group SAP must hold exactly k=" + std::to_string(cfg.active()) + " indices");
  }
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw ConfigError("group SAP indices must be distinct");
  }
  if (!indices_.empty() && indices_.back() >= cfg.group_size()) {
    throw ConfigError("group SAP index out of range [0, n)");
  }
}

std::uint64_t GroupSap::rank(const SystemConfig& cfg) const {
  return rank_subset(indices_, cfg.group_size());
}

Sap::Sap(std::vector<GroupSap> groups, const SystemConfig& cfg)
    : groups_(std::move(groups)), mask_(cfg.n_fft(), 0), n_fft_(cfg.n_fft()) {
  if (groups_.size() != cfg.groups()) {
    throw ConfigError("expected " + std::to_string(cfg.groups()) + " groups, got " +
                      std::to_string(groups_.size()));
  }
  const std::size_t g_count = cfg.groups();
  for (std::size_t g = 0; g < g_count; ++g) {
    for (std::size_t r : groups_[g].indices()) mask_[g_count * r + g] = 1;
  }
  active_.reserve(cfg.total_active());
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) active_.push_back(i);
  }
}

Sap Sap::from_active(std::span<const std::size_t> active, const SystemConfig& cfg) {
  std::vector<std::vector<std::size_t>> rows(cfg.groups());
  for (std::size_t i : active) {
    if (i >= cfg.n_fft()) throw ConfigError("active index out of range [0, N)");
    rows[i % cfg.groups()].push_back(i / cfg.groups());
  }
  std::vector<GroupSap> groups;
  groups.reserve(cfg.groups());
  for (auto& r : rows) groups.emplace_back(std::move(r), cfg);
  return Sap(std::move(groups), cfg);
}

double FrequencyBlock::energy() const noexcept {
  double e = 0.0;
  for (const auto& v : values) e += std::norm(v);
  return e;
}

double TimeSignal::energy() const noexcept {
  double e = 0.0;
  for (const auto& v : samples) e += std::norm(v);
  return e;
}

double TimeSignal::peak_power() const noexcept {
  double peak = 0.0;
  for (const auto& v : samples) peak = std::max(peak, std::norm(v));
  return peak;
}

namespace {

std::uint64_t read_word(std::span<const std::uint8_t> bits) {
  std::uint64_t word = 0;
  for (std::uint8_t b : bits) {
    if (b > 1) throw ConfigError("bit values must be 0 or 1");
    word = (word << 1) | b;
  }
  return word;
}

}  // namespace

GroupPayload map_bits_to_group(std::span<const std::uint8_t> bits, const SystemConfig& cfg,
                               const Constellation& constellation) {
  if (bits.size() != cfg.bits_per_group()) {
    throw ConfigError("bit word must have p=" + std::to_string(cfg.bits_per_group()) +
                      " bits, got " + std::to_string(bits.size()));
  }
  if (constellation.order() != cfg.mod_order()) throw ConfigError("constellation order != M");

  const std::uint64_t rank = read_word(bits.first(cfg.index_bits()));
  GroupPayload payload{GroupSap(unrank_subset(rank, cfg.group_size(), cfg.active()), cfg), {}};

  const std::size_t width = constellation.bits_per_symbol();
  auto symbol_bits = bits.subspan(cfg.index_bits());
  payload.symbols.reserve(cfg.active());
  for (std::size_t s = 0; s < cfg.active(); ++s) {
    payload.symbols.push_back(constellation[read_word(symbol_bits.subspan(s * width, width))]);
  }
  return payload;
}

GroupSap sample_group_sap(const SystemConfig& cfg, Rng& rng, SapSource source) {
  const std::uint64_t space = source == SapSource::uniform
                                  ? binomial(cfg.group_size(), cfg.active())
                                  : std::uint64_t{1} << cfg.index_bits();
  return GroupSap(unrank_subset(rng.below(space), cfg.group_size(), cfg.active()), cfg);
}

Sap sample_random_sap(const SystemConfig& cfg, Rng& rng, SapSource source) {
  std::vector<GroupSap> groups;
  groups.reserve(cfg.groups());
  for (std::size_t g = 0; g < cfg.groups(); ++g) groups.push_back(sample_group_sap(cfg, rng, source));
  return Sap(std::move(groups), cfg);
}

TaggedBlock assemble_block(std::span<const GroupPayload> groups, const SystemConfig& cfg) {
  if (groups.size() != cfg.groups()) {
    throw ConfigError("expected " + std::to_string(cfg.groups()) + " groups, got " +
                      std::to_string(groups.size()));
  }
  FrequencyBlock block{std::vector<cplx>(cfg.n_fft())};
  std::vector<GroupSap> saps;
  saps.reserve(groups.size());
  const std::size_t g_count = cfg.groups();
  for (std::size_t g = 0; g < g_count; ++g) {
    const auto rows = groups[g].sap.indices();
    if (groups[g].symbols.size() != rows.size()) throw ConfigError("need one symbol per active index");
    for (std::size_t s = 0; s < rows.size(); ++s) block.values[g_count * rows[s] + g] = groups[g].symbols[s];
    saps.push_back(groups[g].sap);
  }
  return {std::move(block), Sap(std::move(saps), cfg)};
}

std::vector<std::vector<cplx>> deinterleave(const FrequencyBlock& block, const SystemConfig& cfg) {
  if (block.size() != cfg.n_fft()) throw ConfigError("block length != N");
  std::vector<std::vector<cplx>> groups(cfg.groups(), std::vector<cplx>(cfg.group_size()));
  for (std::size_t r = 0; r < cfg.group_size(); ++r) {
    for (std::size_t g = 0; g < cfg.groups(); ++g) groups[g][r] = block.values[cfg.groups() * r + g];
  }
  return groups;
}

FrequencyBlock random_block(const SystemConfig& cfg, const Constellation& constellation, Rng& rng,
                            SapSource source) {
  FrequencyBlock block{std::vector<cplx>(cfg.n_fft())};
  const std::size_t g_count = cfg.groups();
  for (std::size_t g = 0; g < g_count; ++g) {
    const GroupSap sap = sample_group_sap(cfg, rng, source);
    for (std::size_t r : sap.indices()) {
      block.values[g_count * r + g] = constellation[rng.below(constellation.order())];
    }
  }
  return block;
}

TaggedBlock random_tagged_block(const SystemConfig& cfg, const Constellation& constellation,
                                Rng& rng, SapSource source) {
  std::vector<GroupPayload> groups;
  groups.reserve(cfg.groups());
  for (std::size_t g = 0; g < cfg.groups(); ++g) {
    GroupPayload payload{sample_group_sap(cfg, rng, source), {}};
    for (std::size_t s = 0; s < cfg.active(); ++s) {
      payload.symbols.push_back(constellation[rng.below(constellation.order())]);
    }
    groups.push_back(std::move(payload));
  }
  return assemble_block(groups, cfg);
}

TimeSignal idft(const FrequencyBlock& block, const FftPlan& plan) {
  TimeSignal signal{std::vector<cplx>(block.size())};
  plan.inverse(block.values, signal.samples);
  return signal;
}

TimeSignal idft(const FrequencyBlock& block) { return idft(block, FftPlan(block.size())); }

TimeSignal idft_oversampled(const FrequencyBlock& block, std::size_t factor) {
  if (factor == 0 || !is_power_of_two(factor)) throw ConfigError("oversampling factor must be a power of two");
  if (factor == 1) return idft(block);
  const std::size_t n = block.size();
  FrequencyBlock padded{std::vector<cplx>(n * factor)};
  std::copy(block.values.begin(), block.values.end(), padded.values.begin());
  TimeSignal signal = idft(padded);
  // Undo the extra 1/sqrt(L) of the longer unitary transform.
  const double gain = std::sqrt(static_cast<double>(factor));
  for (auto& v : signal.samples) v *= gain;
  return signal;
}

double papr_db(std::span<const cplx> samples, double mean_power) {
  double peak = 0.0;
  for (const auto& v : samples) peak = std::max(peak, std::norm(v));
  return 10.0 * std::log10(peak / mean_power);
}

double papr_db(const TimeSignal& signal, const SystemConfig& cfg) {
  return papr_db(signal.samples, cfg.mean_power());
}

}  // namespace ofdmim
