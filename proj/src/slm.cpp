#include "ofdmim/slm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ofdmim/mls.hpp"

namespace ofdmim {

namespace {

constexpr double kUnitTolerance = 1e-12;

// Exact values for phases on the quarter-turn grid so that +-1 and +-j sequences
// survive a round trip through their radian representation.
cplx unit_from_phase(double phase) {
  const double quarter = phase / (std::numbers::pi / 2.0);
  const double nearest = std::round(quarter);
  if (std::abs(quarter - nearest) < 1e-12) {
    switch (((static_cast<long>(nearest) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, phase);
}

}  // namespace

PhaseSequence::PhaseSequence(std::vector<cplx> values) : values_(std::move(values)) {
  if (values_.empty()) throw ConfigError("phase sequence must not be empty");
  for (const auto& v : values_) {
    if (std::abs(std::abs(v) - 1.0) > kUnitTolerance) {
      throw ConfigError("phase sequence entries must have unit modulus");
    }
  }
}

PhaseSequence PhaseSequence::from_phases(std::span<const double> phases) {
  std::vector<cplx> values(phases.size());
  std::transform(phases.begin(), phases.end(), values.begin(), unit_from_phase);
  return PhaseSequence(std::move(values));
}

PhaseSequence PhaseSequence::ones(std::size_t size) {
  return PhaseSequence(std::vector<cplx>(size, cplx(1.0, 0.0)));
}

std::vector<double> PhaseSequence::phases() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double a = std::arg(values_[i]);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    if (a >= 2.0 * std::numbers::pi) a = 0.0;
    out[i] = a;
  }
  return out;
}

std::string_view to_string(PssKind kind) {
  switch (kind) {
    case PssKind::random: return "random";
    case PssKind::cyclic_hadamard: return "cyclic-hadamard";
    case PssKind::explicit_list: return "explicit";
  }
  return "?";
}

std::string_view to_string(PhaseAlphabet alphabet) {
  switch (alphabet) {
    case PhaseAlphabet::binary: return "binary";
    case PhaseAlphabet::quaternary: return "quaternary";
    case PhaseAlphabet::continuous: return "continuous";
  }
  return "?";
}

PssKind parse_pss_kind(std::string_view text) {
  if (text == "random") return PssKind::random;
  if (text == "cyclic-hadamard" || text == "hadamard") return PssKind::cyclic_hadamard;
  if (text == "explicit") return PssKind::explicit_list;
  throw ConfigError("unknown PSS kind '" + std::string(text) + "'");
}

PhaseAlphabet parse_phase_alphabet(std::string_view text) {
  if (text == "binary") return PhaseAlphabet::binary;
  if (text == "quaternary") return PhaseAlphabet::quaternary;
  if (text == "continuous") return PhaseAlphabet::continuous;
  throw ConfigError("unknown phase alphabet '" + std::string(text) + "'");
}

PhaseSequenceSet::PhaseSequenceSet(std::vector<PhaseSequence> sequences, PssKind kind)
    : sequences_(std::move(sequences)), kind_(kind) {
  if (sequences_.empty()) throw ConfigError("phase sequence set needs U >= 1");
  for (const auto& s : sequences_) {
    if (s.size() != sequences_.front().size()) throw ConfigError("phase sequences differ in length");
  }
  for (std::size_t a = 0; a < sequences_.size(); ++a) {
    for (std::size_t b = a + 1; b < sequences_.size(); ++b) {
      if (sequences_[a] == sequences_[b]) throw ConfigError("phase sequences must be pairwise distinct");
    }
  }
}

PhaseSequenceSet gen_hadamard_pss(const SystemConfig& cfg, std::size_t count) {
  const std::size_t n = cfg.n_fft();
  if (count == 0 || count > n) {
    throw ConfigError("Hadamard PSS needs 1 <= U <= N, got U=" + std::to_string(count));
  }
  const auto h = cyclic_hadamard(n);
  std::vector<PhaseSequence> rows;
  rows.reserve(count);
  for (std::size_t u = 0; u < count; ++u) {
    std::vector<cplx> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = cplx(static_cast<double>(h[u][i]), 0.0);
    rows.emplace_back(std::move(values));
  }
  return PhaseSequenceSet(std::move(rows), PssKind::cyclic_hadamard);
}

PhaseSequenceSet gen_random_pss(const SystemConfig& cfg, std::size_t count, PhaseAlphabet alphabet,
                                Rng& rng, bool first_all_ones) {
  if (count == 0) throw ConfigError("random PSS needs U >= 1");
  static const cplx kQuaternary[] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const std::size_t n = cfg.n_fft();

  auto draw = [&] {
    std::vector<cplx> values(n);
    for (auto& v : values) {
      switch (alphabet) {
        case PhaseAlphabet::binary: v = kQuaternary[2 * rng.below(2)]; break;
        case PhaseAlphabet::quaternary: v = kQuaternary[rng.below(4)]; break;
        case PhaseAlphabet::continuous: v = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()); break;
      }
    }
    return PhaseSequence(std::move(values));
  };

  std::vector<PhaseSequence> seqs;
  seqs.reserve(count);
  if (first_all_ones) seqs.push_back(PhaseSequence::ones(n));
  while (seqs.size() < count) {
    PhaseSequence candidate = draw();
    // Redraw on collision so the set stays pairwise distinct (only plausible for tiny N).
    if (std::find(seqs.begin(), seqs.end(), candidate) == seqs.end()) seqs.push_back(std::move(candidate));
  }
  return PhaseSequenceSet(std::move(seqs), PssKind::random);
}

PermutationFunction::PermutationFunction(std::vector<std::size_t> map, const SystemConfig& cfg)
    : map_(std::move(map)), inverse_(map_.size(), map_.size()) {
  const std::size_t n = cfg.n_fft();
  if (map_.size() != n) throw ConfigError("permutation length must equal N");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t target = map_[i];
    if (target >= n || inverse_[target] != n) throw ConfigError("permutation is not a bijection on [0, N)");
    if (target % cfg.groups() != i % cfg.groups()) {
      throw ConfigError("permutation moves index " + std::to_string(i) + " to " +
                        std::to_string(target) + " outside its group");
    }
    inverse_[target] = i;
  }
}

PermutationFunction PermutationFunction::identity(const SystemConfig& cfg) {
  std::vector<std::size_t> map(cfg.n_fft());
  std::iota(map.begin(), map.end(), std::size_t{0});
  return PermutationFunction(std::move(map), cfg);
}

bool PermutationFunction::is_identity() const noexcept {
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] != i) return false;
  }
  return true;
}

PermutationFunction inverse(const PermutationFunction& d, const SystemConfig& cfg) {
  std::vector<std::size_t> map(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) map[i] = d.inverse(i);
  return PermutationFunction(std::move(map), cfg);
}

PermutationFunction compose(const PermutationFunction& a, const PermutationFunction& b,
                            const SystemConfig& cfg) {
  std::vector<std::size_t> map(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) map[i] = a(b(i));
  return PermutationFunction(std::move(map), cfg);
}

std::string_view to_string(PermKind kind) {
  switch (kind) {
    case PermKind::identity: return "identity";
    case PermKind::random: return "random";
    case PermKind::explicit_list: return "explicit";
  }
  return "?";
}

PermKind parse_perm_kind(std::string_view text) {
  if (text == "identity" || text == "none") return PermKind::identity;
  if (text == "random") return PermKind::random;
  if (text == "explicit") return PermKind::explicit_list;
  throw ConfigError("unknown permutation kind '" + std::string(text) + "'");
}

PermutationSet::PermutationSet(std::vector<PermutationFunction> perms, PermKind kind)
    : perms_(std::move(perms)), kind_(kind) {
  if (perms_.empty()) throw ConfigError("permutation set needs U >= 1");
  for (const auto& p : perms_) {
    if (p.size() != perms_.front().size()) throw ConfigError("permutations differ in length");
  }
}

PermutationSet gen_perm_set(const SystemConfig& cfg, std::size_t count, PermKind kind, Rng& rng,
                            bool first_identity) {
  if (count == 0) throw ConfigError("permutation set needs U >= 1");
  if (kind == PermKind::explicit_list) throw ConfigError("explicit permutation sets come from make_perm_set");

  std::vector<PermutationFunction> perms;
  perms.reserve(count);
  const std::size_t g_count = cfg.groups();
  const std::size_t rows = cfg.group_size();
  for (std::size_t u = 0; u < count; ++u) {
    if (kind == PermKind::identity || (first_identity && u == 0)) {
      perms.push_back(PermutationFunction::identity(cfg));
      continue;
    }
    std::vector<std::size_t> map(cfg.n_fft());
    std::vector<std::size_t> shuffle(rows);
    for (std::size_t g = 0; g < g_count; ++g) {
      std::iota(shuffle.begin(), shuffle.end(), std::size_t{0});
      for (std::size_t r = rows - 1; r > 0; --r) std::swap(shuffle[r], shuffle[rng.below(r + 1)]);
      for (std::size_t r = 0; r < rows; ++r) map[g_count * r + g] = g_count * shuffle[r] + g;
    }
    perms.emplace_back(std::move(map), cfg);
  }
  return PermutationSet(std::move(perms), kind);
}

PermutationSet make_perm_set(const std::vector<std::vector<std::size_t>>& maps,
                             const SystemConfig& cfg) {
  std::vector<PermutationFunction> perms;
  perms.reserve(maps.size());
  for (const auto& m : maps) perms.emplace_back(m, cfg);
  return PermutationSet(std::move(perms), PermKind::explicit_list);
}

FrequencyBlock apply_permutation(const FrequencyBlock& block, const PermutationFunction& d) {
  if (block.size() != d.size()) throw ConfigError("block and permutation lengths differ");
  FrequencyBlock out{std::vector<cplx>(block.size())};
  for (std::size_t i = 0; i < block.size(); ++i) out.values[d(i)] = block.values[i];
  return out;
}

std::vector<std::size_t> permute_active(std::span<const std::size_t> active,
                                        const PermutationFunction& d) {
  std::vector<std::size_t> out;
  out.reserve(active.size());
  for (std::size_t i : active) out.push_back(d(i));
  std::sort(out.begin(), out.end());
  return out;
}

SlmSelector::SlmSelector(const SystemConfig& cfg, const PhaseSequenceSet& pss,
                         const PermutationSet& perms, std::size_t oversample)
    : n_fft_(cfg.n_fft()),
      oversample_(oversample),
      mean_power_(cfg.mean_power()),
      plan_(cfg.n_fft() * (oversample == 0 ? 1 : oversample)),
      scratch_(cfg.n_fft() * (oversample == 0 ? 1 : oversample)) {
  if (oversample == 0 || !is_power_of_two(oversample)) {
    throw ConfigError("oversampling factor must be a power of two");
  }
  if (pss.count() != perms.count()) {
    throw ConfigError("PSS has " + std::to_string(pss.count()) + " sequences but permutation set has " +
                      std::to_string(perms.count()));
  }
  if (pss.length() != n_fft_ || perms[0].size() != n_fft_) {
    throw ConfigError("PSS/permutation length must equal N");
  }
  const std::size_t u_count = pss.count();
  dest_.resize(u_count);
  phase_.resize(u_count);
  for (std::size_t u = 0; u < u_count; ++u) {
    dest_[u].resize(n_fft_);
    phase_[u].resize(n_fft_);
    for (std::size_t i = 0; i < n_fft_; ++i) {
      dest_[u][i] = perms[u](i);
      phase_[u][i] = pss[u][perms[u](i)];
    }
  }
}

double SlmSelector::candidate_peak(const FrequencyBlock& block, std::size_t u) {
  std::fill(scratch_.begin(), scratch_.end(), cplx{});
  const auto& dest = dest_[u];
  const auto& phase = phase_[u];
  for (std::size_t i = 0; i < n_fft_; ++i) scratch_[dest[i]] = phase[i] * block.values[i];
  plan_.transform_unscaled(scratch_, +1);
  double peak = 0.0;
  for (const auto& v : scratch_) peak = std::max(peak, std::norm(v));
  // Unscaled sum s gives x = s / sqrt(N) for every oversampling factor.
  return peak / static_cast<double>(n_fft_);
}

double SlmSelector::min_papr_db(const FrequencyBlock& block) {
  if (block.size() != n_fft_) throw ConfigError("block length != N");
  double best = candidate_peak(block, 0);
  for (std::size_t u = 1; u < dest_.size(); ++u) best = std::min(best, candidate_peak(block, u));
  return 10.0 * std::log10(best / mean_power_);
}

SlmResult SlmSelector::select(const FrequencyBlock& block) {
  if (block.size() != n_fft_) throw ConfigError("block length != N");
  SlmResult result;
  result.papr_db.resize(dest_.size());
  double best = 0.0;
  for (std::size_t u = 0; u < dest_.size(); ++u) {
    const double peak = candidate_peak(block, u);
    result.papr_db[u] = 10.0 * std::log10(peak / mean_power_);
    if (u == 0 || peak < best) {
      best = peak;
      result.selected = u;
    }
  }
  std::fill(scratch_.begin(), scratch_.end(), cplx{});
  const std::size_t u = result.selected;
  for (std::size_t i = 0; i < n_fft_; ++i) scratch_[dest_[u][i]] = phase_[u][i] * block.values[i];
  plan_.transform_unscaled(scratch_, +1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_fft_));
  result.signal.samples.resize(scratch_.size());
  for (std::size_t m = 0; m < scratch_.size(); ++m) result.signal.samples[m] = scratch_[m] * scale;
  return result;
}

SlmResult slm_select(const FrequencyBlock& block, const PhaseSequenceSet& pss,
                     const PermutationSet& perms, const SystemConfig& cfg) {
  SlmSelector selector(cfg, pss, perms);
  return selector.select(block);
}

}  // namespace ofdmim
