#include "ofdmim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>

#include "ofdmim/constellation.hpp"
#include "ofdmim/random.hpp"

namespace ofdmim {

std::string_view to_string(SchemeMode mode) {
  return mode == SchemeMode::original ? "original" : "slm";
}

std::string_view to_string(PssSource source) {
  switch (source) {
    case PssSource::random: return "random";
    case PssSource::cyclic_hadamard: return "cyclic-hadamard";
    case PssSource::pinned: return "pinned";
  }
  return "?";
}

std::string_view to_string(PermSource source) {
  switch (source) {
    case PermSource::identity: return "identity";
    case PermSource::random: return "random";
    case PermSource::pinned: return "pinned";
  }
  return "?";
}

std::string_view to_string(SapSource source) {
  return source == SapSource::uniform ? "uniform" : "bits";
}

SchemeMode parse_scheme_mode(std::string_view text) {
  if (text == "original") return SchemeMode::original;
  if (text == "slm") return SchemeMode::slm;
  throw ConfigError("unknown scheme '" + std::string(text) + "'");
}

PssSource parse_pss_source(std::string_view text) {
  if (text == "random") return PssSource::random;
  if (text == "cyclic-hadamard" || text == "hadamard") return PssSource::cyclic_hadamard;
  if (text == "pinned" || text == "file") return PssSource::pinned;
  throw ConfigError("unknown PSS source '" + std::string(text) + "'");
}

PermSource parse_perm_source(std::string_view text) {
  if (text == "identity" || text == "none") return PermSource::identity;
  if (text == "random") return PermSource::random;
  if (text == "pinned" || text == "file") return PermSource::pinned;
  throw ConfigError("unknown permutation source '" + std::string(text) + "'");
}

SapSource parse_sap_source(std::string_view text) {
  if (text == "uniform") return SapSource::uniform;
  if (text == "bits") return SapSource::bits;
  throw ConfigError("unknown SAP source '" + std::string(text) + "'");
}

SchemeDescriptor SchemeDescriptor::original() { return SchemeDescriptor{}; }

SchemeDescriptor SchemeDescriptor::slm(std::size_t candidates, PssSource pss, PermSource perm) {
  SchemeDescriptor s;
  s.mode = SchemeMode::slm;
  s.candidates = candidates;
  s.pss = pss;
  s.perm = perm;
  return s;
}

void SchemeDescriptor::validate(const SystemConfig& cfg) const {
  if (mode == SchemeMode::original) {
    if (candidates != 1) throw ConfigError("original scheme forces U = 1");
    if (perm != PermSource::identity || pinned_pss || pinned_perms) {
      throw ConfigError("original scheme takes no PSS or permutation");
    }
    return;
  }
  if (candidates < 1) throw ConfigError("SLM needs U >= 1");
  if (pss == PssSource::cyclic_hadamard && candidates > cfg.n_fft()) {
    throw ConfigError("Hadamard PSS supports at most N sequences");
  }
  if (pss == PssSource::pinned) {
    if (!pinned_pss) throw ConfigError("pinned PSS requested but none supplied");
    if (pinned_pss->count() != candidates || pinned_pss->length() != cfg.n_fft()) {
      throw ConfigError("pinned PSS does not match U and N");
    }
  }
  if (perm == PermSource::pinned) {
    if (!pinned_perms) throw ConfigError("pinned permutation set requested but none supplied");
    if (pinned_perms->count() != candidates || pinned_perms->perms().front().size() != cfg.n_fft()) {
      throw ConfigError("pinned permutation set does not match U and N");
    }
  }
}

void TrialPlan::validate() const {
  scheme.validate(cfg);
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (gamma_db.empty()) throw ConfigError("gamma grid is empty");
  for (std::size_t j = 1; j < gamma_db.size(); ++j) {
    if (!(gamma_db[j] > gamma_db[j - 1])) throw ConfigError("gamma grid must be strictly increasing");
  }
  if (oversample == 0 || !is_power_of_two(oversample)) {
    throw ConfigError("oversampling factor must be a power of two");
  }
}

std::vector<double> gamma_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw ConfigError("invalid gamma grid");
  const auto points = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  std::vector<double> grid(points);
  // Multiply rather than accumulate so values do not drift.
  for (std::size_t j = 0; j < points; ++j) grid[j] = start + step * static_cast<double>(j);
  return grid;
}

std::vector<double> default_gamma_grid() { return gamma_grid(4.0, 13.0, 0.1); }

std::vector<double> CcdfCurve::probabilities() const {
  std::vector<double> p(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) p[j] = probability(j);
  return p;
}

SchemeInstance instantiate_scheme(const TrialPlan& plan) {
  plan.validate();
  const SystemConfig& cfg = plan.cfg;
  const SchemeDescriptor& s = plan.scheme;
  if (s.mode == SchemeMode::original) {
    return {PhaseSequenceSet({PhaseSequence::ones(cfg.n_fft())}, PssKind::explicit_list),
            PermutationSet({PermutationFunction::identity(cfg)}, PermKind::identity)};
  }

  std::optional<PhaseSequenceSet> pss;
  switch (s.pss) {
    case PssSource::random: {
      Rng rng(plan.seed, StreamTag::phase_sequences);
      pss = gen_random_pss(cfg, s.candidates, s.alphabet, rng, s.first_phase_all_ones);
      break;
    }
    case PssSource::cyclic_hadamard: pss = gen_hadamard_pss(cfg, s.candidates); break;
    case PssSource::pinned: pss = s.pinned_pss; break;
  }

  std::optional<PermutationSet> perms;
  switch (s.perm) {
    case PermSource::identity:
    case PermSource::random: {
      Rng rng(plan.seed, StreamTag::permutations);
      perms = gen_perm_set(cfg, s.candidates,
                           s.perm == PermSource::identity ? PermKind::identity : PermKind::random, rng,
                           s.first_perm_identity);
      break;
    }
    case PermSource::pinned: perms = s.pinned_perms; break;
  }
  return {std::move(*pss), std::move(*perms)};
}

CcdfCurve run_ccdf(const TrialPlan& plan, std::size_t workers) {
  return run_ccdf(plan, instantiate_scheme(plan), workers);
}

CcdfCurve run_ccdf(const TrialPlan& plan, const SchemeInstance& instance, std::size_t workers) {
  plan.validate();
  const std::size_t bins = plan.gamma_db.size();
  workers = std::clamp<std::size_t>(workers, 1, static_cast<std::size_t>(std::min<std::uint64_t>(plan.trials, 256)));

  // histogram[b] = trials whose PAPR exceeds exactly the first b grid points.
  std::vector<std::vector<std::uint64_t>> histograms(workers, std::vector<std::uint64_t>(bins + 1, 0));
  auto work = [&](std::size_t w) {
    const std::uint64_t begin = plan.trials * w / workers;
    const std::uint64_t end = plan.trials * (w + 1) / workers;
    SlmSelector selector(plan.cfg, instance.pss, instance.perms, plan.oversample);
    const Constellation constellation(plan.cfg.mod_order());
    auto& hist = histograms[w];
    for (std::uint64_t t = begin; t < end; ++t) {
      Rng rng(derive_seed(plan.seed, t));
      const FrequencyBlock block = random_block(plan.cfg, constellation, rng, plan.scheme.sap_source);
      const double papr = selector.min_papr_db(block);
      const auto below = std::lower_bound(plan.gamma_db.begin(), plan.gamma_db.end(), papr) -
                         plan.gamma_db.begin();
      ++hist[static_cast<std::size_t>(below)];
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  std::vector<std::uint64_t> total(bins + 1, 0);
  for (const auto& h : histograms) {
    for (std::size_t b = 0; b <= bins; ++b) total[b] += h[b];
  }
  CcdfCurve curve;
  curve.gamma_db = plan.gamma_db;
  curve.trials = plan.trials;
  curve.counts.assign(bins, 0);
  std::uint64_t above = 0;
  for (std::size_t j = bins; j-- > 0;) {
    above += total[j + 1];
    curve.counts[j] = above;
  }
  return curve;
}

double papr_at_ccdf(const CcdfCurve& curve, double target) {
  if (!(target > 0.0) || target > 1.0) throw UnresolvableError("target probability must lie in (0, 1]");
  if (target < curve.resolution(10)) {
    throw UnresolvableError("target " + format_number(target) + " is below the curve resolution at " +
                            std::to_string(curve.trials) + " trials");
  }
  const auto p = curve.probabilities();
  std::size_t j = 0;
  while (j < p.size() && p[j] > target) ++j;
  if (j == p.size()) throw UnresolvableError("curve stays above the target over the whole grid");
  if (p[j] == target) return curve.gamma_db[j];
  if (j == 0) throw UnresolvableError("curve starts below the target");
  if (p[j] == 0.0) throw UnresolvableError("no exceedances right after the crossing; refine the grid");
  const double lo = std::log10(p[j - 1]);
  const double hi = std::log10(p[j]);
  const double t = (std::log10(target) - lo) / (hi - lo);
  return curve.gamma_db[j - 1] + t * (curve.gamma_db[j] - curve.gamma_db[j - 1]);
}

CurveComparison compare_curves(const CcdfCurve& a, const CcdfCurve& b,
                               const std::vector<double>& levels, std::uint64_t min_count, double z) {
  if (a.gamma_db != b.gamma_db) throw ConfigError("curves use different gamma grids");
  CurveComparison cmp;
  const std::size_t bins = a.gamma_db.size();
  cmp.delta.resize(bins);
  cmp.sigma.resize(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    const double pa = a.probability(j);
    const double pb = b.probability(j);
    cmp.delta[j] = pa - pb;
    cmp.sigma[j] = std::sqrt(pa * (1.0 - pa) / static_cast<double>(a.trials) +
                             pb * (1.0 - pb) / static_cast<double>(b.trials));
    cmp.max_abs_delta = std::max(cmp.max_abs_delta, std::abs(cmp.delta[j]));
    if (a.counts[j] >= min_count && b.counts[j] >= min_count) {
      ++cmp.resolvable_points;
      if (pa > pb) cmp.a_dominates = false;
      if (pa > pb + z * cmp.sigma[j]) cmp.a_dominates_within_noise = false;
    }
  }
  for (double level : levels) {
    CurveGap gap{level, std::nullopt};
    try {
      gap.gap_db = papr_at_ccdf(a, level) - papr_at_ccdf(b, level);
    } catch (const UnresolvableError&) {
    }
    cmp.gaps.push_back(gap);
  }
  return cmp;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_ccdf_csv(std::ostream& out, const CcdfCurve& curve) {
  out << "gamma_db,ccdf,count,trials\n";
  for (std::size_t j = 0; j < curve.gamma_db.size(); ++j) {
    out << format_number(curve.gamma_db[j]) << ',' << format_number(curve.probability(j)) << ','
        << curve.counts[j] << ',' << curve.trials << '\n';
  }
}

}  // namespace ofdmim
