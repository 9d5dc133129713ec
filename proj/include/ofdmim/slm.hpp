#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ofdmim/config.hpp"
#include "ofdmim/constellation.hpp"
#include "ofdmim/fft.hpp"
#include "ofdmim/ofdm_im.hpp"
#include "ofdmim/random.hpp"

namespace ofdmim {

/// Unit-modulus phase sequence P(i) = e^{j phi(i)}.
class PhaseSequence {
 public:
  explicit PhaseSequence(std::vector<cplx> values);
  static PhaseSequence from_phases(std::span<const double> phases);
  static PhaseSequence ones(std::size_t size);

  std::span<const cplx> values() const noexcept { return values_; }
  const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }
  /// Phases in [0, 2pi).
  std::vector<double> phases() const;

  friend bool operator==(const PhaseSequence&, const PhaseSequence&) = default;

 private:
  std::vector<cplx> values_;
};

enum class PssKind { random, cyclic_hadamard, explicit_list };
enum class PhaseAlphabet { binary, quaternary, continuous };

std::string_view to_string(PssKind kind);
std::string_view to_string(PhaseAlphabet alphabet);
PssKind parse_pss_kind(std::string_view text);
PhaseAlphabet parse_phase_alphabet(std::string_view text);

/// U pairwise-distinct phase sequences of one common length.
class PhaseSequenceSet {
 public:
  PhaseSequenceSet(std::vector<PhaseSequence> sequences, PssKind kind);

  std::size_t count() const noexcept { return sequences_.size(); }
  std::size_t length() const noexcept { return sequences_.front().size(); }
  const PhaseSequence& operator[](std::size_t u) const { return sequences_.at(u); }
  const std::vector<PhaseSequence>& sequences() const noexcept { return sequences_; }
  PssKind kind() const noexcept { return kind_; }

 private:
  std::vector<PhaseSequence> sequences_;
  PssKind kind_;
};

/// Rows 0..U-1 of the cyclic Hadamard matrix as +-1 sequences (row 0 is all ones).
PhaseSequenceSet gen_hadamard_pss(const SystemConfig& cfg, std::size_t count);

/// I.i.d. entries from `alphabet`; optionally the first sequence is all ones.
PhaseSequenceSet gen_random_pss(const SystemConfig& cfg, std::size_t count, PhaseAlphabet alphabet,
                                Rng& rng, bool first_all_ones = false);

/**
 * Subcarrier permutation d that maps every group's residue class
 * {g, G+g, ..., (n-1)G+g} onto itself.
 */
class PermutationFunction {
 public:
  PermutationFunction(std::vector<std::size_t> map, const SystemConfig& cfg);
  static PermutationFunction identity(const SystemConfig& cfg);

  std::size_t operator()(std::size_t i) const noexcept { return map_[i]; }
  std::size_t inverse(std::size_t i) const noexcept { return inverse_[i]; }
  std::span<const std::size_t> map() const noexcept { return map_; }
  std::size_t size() const noexcept { return map_.size(); }
  bool is_identity() const noexcept;

  friend bool operator==(const PermutationFunction& a, const PermutationFunction& b) {
    return a.map_ == b.map_;
  }

 private:
  std::vector<std::size_t> map_;
  std::vector<std::size_t> inverse_;
};

PermutationFunction inverse(const PermutationFunction& d, const SystemConfig& cfg);
/// (a o b)(i) = a(b(i)).
PermutationFunction compose(const PermutationFunction& a, const PermutationFunction& b,
                            const SystemConfig& cfg);

enum class PermKind { identity, random, explicit_list };

std::string_view to_string(PermKind kind);
PermKind parse_perm_kind(std::string_view text);

class PermutationSet {
 public:
  PermutationSet(std::vector<PermutationFunction> perms, PermKind kind);

  std::size_t count() const noexcept { return perms_.size(); }
  const PermutationFunction& operator[](std::size_t u) const { return perms_.at(u); }
  const std::vector<PermutationFunction>& perms() const noexcept { return perms_; }
  PermKind kind() const noexcept { return kind_; }

 private:
  std::vector<PermutationFunction> perms_;
  PermKind kind_;
};

/// Identity or random sets. `random` draws G independent uniform shuffles per d_u.
PermutationSet gen_perm_set(const SystemConfig& cfg, std::size_t count, PermKind kind, Rng& rng,
                            bool first_identity = false);
/// Validates every map against the per-group closure rule.
PermutationSet make_perm_set(const std::vector<std::vector<std::size_t>>& maps,
                             const SystemConfig& cfg);

/// X_u(d(i)) = X(i).
FrequencyBlock apply_permutation(const FrequencyBlock& block, const PermutationFunction& d);
/// {d(i) : i in active}, sorted.
std::vector<std::size_t> permute_active(std::span<const std::size_t> active,
                                        const PermutationFunction& d);

struct SlmResult {
  std::size_t selected = 0;
  TimeSignal signal;
  std::vector<double> papr_db;  // one per candidate
};

/**
 * Reusable SLM-with-permutation transmitter: candidate u is
 * IFFT{P_u (x) X_u} with X_u the block permuted by d_u.
 *
 * Holds scratch buffers, so one instance per thread.
 */
class SlmSelector {
 public:
  SlmSelector(const SystemConfig& cfg, const PhaseSequenceSet& pss, const PermutationSet& perms,
              std::size_t oversample = 1);

  std::size_t candidates() const noexcept { return dest_.size(); }

  /// Full result with every candidate's PAPR; ties go to the lowest index.
  SlmResult select(const FrequencyBlock& block);
  /// PAPR (dB) of the selected candidate only.
  double min_papr_db(const FrequencyBlock& block);

 private:
  double candidate_peak(const FrequencyBlock& block, std::size_t u);

  std::size_t n_fft_;
  std::size_t oversample_;
  double mean_power_;
  FftPlan plan_;
  std::vector<std::vector<std::size_t>> dest_;  // dest_[u][i] = d_u(i)
  std::vector<std::vector<cplx>> phase_;         // phase_[u][i] = P_u(d_u(i))
  std::vector<cplx> scratch_;
};

SlmResult slm_select(const FrequencyBlock& block, const PhaseSequenceSet& pss,
                     const PermutationSet& perms, const SystemConfig& cfg);

}  // namespace ofdmim
