#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ofdmim/config.hpp"
#include "ofdmim/constellation.hpp"
#include "ofdmim/random.hpp"

namespace ofdmim {

class FftPlan;

/// Activation choice of one group: a sorted k-subset of {0, ..., n-1}.
class GroupSap {
 public:
  GroupSap(std::vector<std::size_t> indices, const SystemConfig& cfg);

  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::uint64_t rank(const SystemConfig& cfg) const;

  friend bool operator==(const GroupSap&, const GroupSap&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/**
 * Subcarrier activation pattern of a whole block.
 *
 * Group g occupies positions G*r + g (interleaved placement), so its active
 * set is I^g = {G*r + g : r in groups[g]} and I is the sorted union.
 */
class Sap {
 public:
  Sap(std::vector<GroupSap> groups, const SystemConfig& cfg);

  /// Builds a pattern from an arbitrary active set; validates the per-group counts.
  static Sap from_active(std::span<const std::size_t> active, const SystemConfig& cfg);

  std::span<const std::size_t> active() const noexcept { return active_; }
  const std::vector<GroupSap>& groups() const noexcept { return groups_; }
  std::size_t n_fft() const noexcept { return n_fft_; }
  /// Indicator alpha_i: 1 when subcarrier i is active.
  bool is_active(std::size_t i) const noexcept { return mask_.at(i) != 0; }

  friend bool operator==(const Sap& a, const Sap& b) { return a.active_ == b.active_; }

 private:
  std::vector<GroupSap> groups_;
  std::vector<std::size_t> active_;
  std::vector<std::uint8_t> mask_;
  std::size_t n_fft_ = 0;
};

/// Frequency-domain block X of length N.
struct FrequencyBlock {
  std::vector<cplx> values;

  std::size_t size() const noexcept { return values.size(); }
  double energy() const noexcept;
};

/// Time-domain signal x of length N (or L*N when oversampled).
struct TimeSignal {
  std::vector<cplx> samples;

  std::size_t size() const noexcept { return samples.size(); }
  double energy() const noexcept;
  double peak_power() const noexcept;
};

/// One group's contribution: its activation pattern and its k symbols in index order.
struct GroupPayload {
  GroupSap sap;
  std::vector<cplx> symbols;
};

/// Splits a p-bit word (MSB first, one bit per element) into SAP and symbols.
/// The first p1 bits pick the subset by lexicographic unranking.
GroupPayload map_bits_to_group(std::span<const std::uint8_t> bits, const SystemConfig& cfg,
                               const Constellation& constellation);

enum class SapSource {
  uniform,  // all C(n,k) subsets equally likely
  bits,     // only the 2^{p1} subsets reachable from index bits
};

GroupSap sample_group_sap(const SystemConfig& cfg, Rng& rng, SapSource source = SapSource::uniform);
Sap sample_random_sap(const SystemConfig& cfg, Rng& rng, SapSource source = SapSource::uniform);

/// A block together with its activation pattern.
struct TaggedBlock {
  FrequencyBlock block;
  Sap sap;
};

/// Places X^g(r) at X(G*r + g).
TaggedBlock assemble_block(std::span<const GroupPayload> groups, const SystemConfig& cfg);

/// Inverse of the interleaved placement: returns X^g for every g.
std::vector<std::vector<cplx>> deinterleave(const FrequencyBlock& block, const SystemConfig& cfg);

/// Fresh random block: uniform SAP per group and i.i.d. uniform symbols.
FrequencyBlock random_block(const SystemConfig& cfg, const Constellation& constellation, Rng& rng,
                            SapSource source = SapSource::uniform);
TaggedBlock random_tagged_block(const SystemConfig& cfg, const Constellation& constellation,
                                Rng& rng, SapSource source = SapSource::uniform);

/// Unitary IDFT, x(m) = N^{-1/2} sum_i X(i) e^{j2pi im/N}.
TimeSignal idft(const FrequencyBlock& block);
TimeSignal idft(const FrequencyBlock& block, const FftPlan& plan);

/// Samples the same continuous-time envelope at `factor` times the Nyquist rate
/// (zero-padding at the top of the spectrum). factor = 1 is idft().
TimeSignal idft_oversampled(const FrequencyBlock& block, std::size_t factor);

/// 10 log10(max|x|^2 / mean_power).
double papr_db(std::span<const cplx> samples, double mean_power);
/// PAPR with the ensemble mean k/n as the reference, not the per-block mean.
double papr_db(const TimeSignal& signal, const SystemConfig& cfg);

}  // namespace ofdmim
