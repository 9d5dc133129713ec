#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ofdmim/analysis.hpp"
#include "ofdmim/montecarlo.hpp"
#include "ofdmim/slm.hpp"

namespace ofdmim {

using json = nlohmann::ordered_json;

// Phase sequence sets: {"kind", "n_fft", "phases": [[radians...], ...]}.
json pss_to_json(const PhaseSequenceSet& pss);
PhaseSequenceSet pss_from_json(const json& doc);

// Permutation sets: {"kind", "n_fft", "perms": [[indices...], ...]}.
json perm_set_to_json(const PermutationSet& perms);
PermutationSet perm_set_from_json(const json& doc, const SystemConfig& cfg);

json mu_reports_to_json(const std::vector<MuReport>& reports, const SystemConfig& cfg);

json config_to_json(const SystemConfig& cfg);
/// Full plan echo, including the seed and fingerprints of the instantiated sets.
json plan_to_json(const TrialPlan& plan, const SchemeInstance& instance);

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string fingerprint(const json& doc);

json read_json_file(const std::string& path);

struct VarRhoRow {
  std::size_t m = 0;
  double analytic = 0.0;
  double empirical = 0.0;
};

/// m,analytic,empirical,relative_error (relative error empty when analytic is 0).
void write_var_rho_csv(std::ostream& out, const std::vector<VarRhoRow>& rows);

/// m,punctured,full with a trailing "# c=" comment line.
void write_spectrum_csv(std::ostream& out, const PssSpectrum& punctured, const PssSpectrum& full);

}  // namespace ofdmim
