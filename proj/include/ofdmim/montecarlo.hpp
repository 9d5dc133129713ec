#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ofdmim/config.hpp"
#include "ofdmim/ofdm_im.hpp"
#include "ofdmim/slm.hpp"

namespace ofdmim {

enum class SchemeMode { original, slm };
enum class PssSource { random, cyclic_hadamard, pinned };
enum class PermSource { identity, random, pinned };

std::string_view to_string(SchemeMode mode);
std::string_view to_string(PssSource source);
std::string_view to_string(PermSource source);
std::string_view to_string(SapSource source);
SchemeMode parse_scheme_mode(std::string_view text);
PssSource parse_pss_source(std::string_view text);
PermSource parse_perm_source(std::string_view text);
SapSource parse_sap_source(std::string_view text);

/// One experiment arm. `original` means U = 1, all-ones PSS, identity permutation.
struct SchemeDescriptor {
  SchemeMode mode = SchemeMode::original;
  std::size_t candidates = 1;
  PssSource pss = PssSource::random;
  PermSource perm = PermSource::identity;
  SapSource sap_source = SapSource::uniform;
  PhaseAlphabet alphabet = PhaseAlphabet::quaternary;
  bool first_phase_all_ones = false;
  bool first_perm_identity = false;
  std::optional<PhaseSequenceSet> pinned_pss;
  std::optional<PermutationSet> pinned_perms;

  static SchemeDescriptor original();
  static SchemeDescriptor slm(std::size_t candidates, PssSource pss, PermSource perm);

  void validate(const SystemConfig& cfg) const;
};

struct TrialPlan {
  SystemConfig cfg;
  SchemeDescriptor scheme;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::vector<double> gamma_db;
  std::size_t oversample = 1;

  void validate() const;
};

/// start, start + step, ... up to and including stop (to within step/2).
std::vector<double> gamma_grid(double start, double stop, double step);
/// 4.0 .. 13.0 dB in 0.1 dB steps.
std::vector<double> default_gamma_grid();

/// Estimated Pr{PAPR > gamma} with raw exceedance counts.
struct CcdfCurve {
  std::vector<double> gamma_db;
  std::vector<std::uint64_t> counts;
  std::uint64_t trials = 0;

  double probability(std::size_t j) const noexcept {
    return static_cast<double>(counts[j]) / static_cast<double>(trials);
  }
  std::vector<double> probabilities() const;
  /// Smallest probability the curve can state with at least `min_count` events.
  double resolution(std::uint64_t min_count = 10) const noexcept {
    return static_cast<double>(min_count) / static_cast<double>(trials);
  }
};

/// The PSS and permutation set an arm uses for every trial, drawn once from the seed.
struct SchemeInstance {
  PhaseSequenceSet pss;
  PermutationSet perms;
};

SchemeInstance instantiate_scheme(const TrialPlan& plan);

/**
 * Runs the plan. Trial t draws its block from the stream derive_seed(seed, t),
 * so the same seed feeds every arm the same blocks and the counts do not
 * depend on `workers`.
 */
CcdfCurve run_ccdf(const TrialPlan& plan, std::size_t workers = 1);
CcdfCurve run_ccdf(const TrialPlan& plan, const SchemeInstance& instance, std::size_t workers = 1);

/// Raised when a curve cannot resolve the requested probability.
class UnresolvableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// gamma (dB) at which the curve crosses `target`, linear in (gamma, log10 CCDF).
double papr_at_ccdf(const CcdfCurve& curve, double target);

struct CurveGap {
  double level = 0.0;
  std::optional<double> gap_db;  // gamma_a - gamma_b; empty when unresolvable
};

struct CurveComparison {
  std::vector<double> delta;  // p_a - p_b per gamma
  std::vector<double> sigma;  // binomial std. dev. of the difference per gamma
  double max_abs_delta = 0.0;
  std::vector<CurveGap> gaps;
  std::size_t resolvable_points = 0;  // both counts >= min_count
  bool a_dominates = true;            // p_a <= p_b at every resolvable point
  bool a_dominates_within_noise = true;  // p_a <= p_b + z sigma at every resolvable point
};

CurveComparison compare_curves(const CcdfCurve& a, const CcdfCurve& b,
                               const std::vector<double>& levels = {1e-1, 1e-2, 1e-3},
                               std::uint64_t min_count = 100, double z = 2.0);

/// `gamma_db,ccdf,count,trials` with 9 significant digits.
void write_ccdf_csv(std::ostream& out, const CcdfCurve& curve);

/// "%.9g" formatting used by every text output.
std::string format_number(double value);

}  // namespace ofdmim
