// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ofdmim/analysis.hpp"
#include "ofdmim/combinadic.hpp"
#include "ofdmim/fft.hpp"
#include "ofdmim/mls.hpp"
#include "ofdmim/montecarlo.hpp"
#include "ofdmim/ofdm_im.hpp"
#include "ofdmim/slm.hpp"
#include "oracles.hpp"

using namespace ofdmim;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

SystemConfig config(std::size_t k) { return SystemConfig::make(64, 16, k, 4); }

CcdfCurve run_arm(std::size_t k, SchemeDescriptor scheme, std::uint64_t trials) {
  const TrialPlan plan{config(k), std::move(scheme), trials, kSeed, default_gamma_grid(), 1};
  return run_ccdf(plan, workers());
}

SchemeDescriptor slm(std::size_t u, PssSource pss, PermSource perm) { return SchemeDescriptor::slm(u, pss, perm); }

// Strict p_a <= p_b at every point where both curves have at least 100 exceedances.
struct Dominance {
  bool holds = true;
  std::size_t points = 0;
  std::string violations;
  double worst_z = -1e300;
};

Dominance dominance(const CcdfCurve& a, const CcdfCurve& b) {
  const auto cmp = compare_curves(a, b, {}, 100);
  Dominance d;
  d.points = cmp.resolvable_points;
  d.holds = cmp.a_dominates;
  for (std::size_t j = 0; j < a.counts.size(); ++j) {
    if (a.counts[j] < 100 || b.counts[j] < 100) continue;
    if (cmp.sigma[j] > 0) d.worst_z = std::max(d.worst_z, cmp.delta[j] / cmp.sigma[j]);
    if (a.counts[j] > b.counts[j]) {
      d.violations += " " + fmt("%.1f", a.gamma_db[j]) + "dB(+" +
                      std::to_string(a.counts[j] - b.counts[j]) + ")";
    }
  }
  return d;
}

Verdict criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0.0;
  double worst_zero = 0.0;
  for (std::size_t k : {2, 4, 8, 14}) {
    const auto cfg = config(k);
    for (std::size_t m : {1, 3, 7}) {
      Rng rng(derive_seed(kSeed, k * 64 + m), StreamTag::analysis);
      const double analytic = var_rho_closed_form(cfg, m);
      const double rel = std::abs(var_rho_empirical(cfg, m, 100000, rng) - analytic) / analytic;
      worst = std::max(worst, rel);
      ok = ok && rel < 0.05;
    }
    for (std::size_t m : {16, 32}) {
      Rng rng(derive_seed(kSeed, k * 64 + m), StreamTag::analysis);
      const double v = var_rho_empirical(cfg, m, 100000, rng);
      worst_zero = std::max(worst_zero, v);
      ok = ok && v < 1e-20;
    }
  }
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < 30.0;
  return {ok, "max relative error " + fmt("%.4f", worst) + ", max var at m in {16,32} " +
                  fmt("%.3g", worst_zero) + ", " + fmt("%.1f", elapsed) + " s"};
}

Verdict criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = config(2);
  const auto id = PermutationFunction::identity(cfg);
  const double mu = mu_metric(id, id, cfg).mu;
  const double elapsed = seconds_since(t0);
  const bool ok = mu == 63.0 && std::abs(mu - 63.01) <= 0.1 && elapsed < 1.0;
  return {ok, "mu(identity, identity) = " + fmt("%.12g", mu) + ", " + fmt("%.3f", elapsed) + " s"};
}

struct Criterion3Curves {
  CcdfCurve k14_no_perm;
};

Verdict criterion3(Criterion3Curves& keep) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t trials = 1000000;
  const auto k2_perm = run_arm(2, slm(4, PssSource::random, PermSource::random), trials);
  const auto k2_plain = run_arm(2, slm(4, PssSource::random, PermSource::identity), trials);
  const auto k14_perm = run_arm(14, slm(4, PssSource::random, PermSource::random), trials);
  keep.k14_no_perm = run_arm(14, slm(4, PssSource::random, PermSource::identity), trials);
  const double elapsed = seconds_since(t0);

  const auto dom = dominance(k2_perm, k2_plain);
  const double gap2 = papr_at_ccdf(k2_plain, 1e-2) - papr_at_ccdf(k2_perm, 1e-2);
  const double gap14 = papr_at_ccdf(keep.k14_no_perm, 1e-2) - papr_at_ccdf(k14_perm, 1e-2);
  const bool ok = dom.holds && gap2 > gap14 && gap14 < 0.15 && elapsed < 600.0;
  std::string detail = "k=2 dominance over " + std::to_string(dom.points) + " points: " +
                       (dom.holds ? "yes" : "no, violations at" + dom.violations +
                                                " (worst " + fmt("%.2f", dom.worst_z) + " sigma)") +
                       "; gap@1e-2 k=2 " + fmt("%.4f", gap2) + " dB, k=14 " + fmt("%.4f", gap14) + " dB, " +
                       fmt("%.0f", elapsed) + " s";
  return {ok, detail};
}

Verdict criterion4() {
  const std::uint64_t trials = 100000;
  const auto with_slm = run_arm(14, slm(4, PssSource::random, PermSource::identity), trials);
  const auto original = run_arm(14, SchemeDescriptor::original(), trials);
  const double gain = papr_at_ccdf(original, 1e-2) - papr_at_ccdf(with_slm, 1e-2);
  return {gain >= 2.0, "PAPR@1e-2 gain " + fmt("%.3f", gain) + " dB"};
}

Verdict criterion5(const Criterion3Curves& keep) {
  const auto hadamard = run_arm(14, slm(4, PssSource::cyclic_hadamard, PermSource::identity), 1000000);
  const auto cmp = compare_curves(hadamard, keep.k14_no_perm, {1e-2}, 100, 2.0);
  const auto dom = dominance(hadamard, keep.k14_no_perm);
  return {cmp.a_dominates_within_noise && cmp.resolvable_points > 0,
          std::to_string(cmp.resolvable_points) + " points, worst (p_had - p_rand)/sigma " +
              fmt("%.2f", dom.worst_z)};
}

Verdict criterion6() {
  std::size_t violations = 0;
  double tightest = 1e300;
  for (std::size_t k : {2, 4, 8, 14}) {
    const auto cfg = config(k);
    const auto pss = gen_hadamard_pss(cfg, 3);
    const auto full = full_spectrum(pss[1], pss[2]);
    const double bound = punctured_bound(*full.c, cfg);
    Rng rng(derive_seed(kSeed, k), StreamTag::analysis);
    for (int t = 0; t < 100; ++t) {
      const Sap sap = sample_random_sap(cfg, rng);
      const double peak = punctured_spectrum(pss[1], pss[2], sap.active()).max_magnitude();
      violations += peak > bound;
      tightest = std::min(tightest, bound - peak);
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over 4 x 100 patterns, smallest slack " +
                               fmt("%.4f", tightest)};
}

Verdict criterion7() {
  const auto cfg = config(8);
  const Constellation cs(16);
  Rng rng(derive_seed(kSeed, 7));
  double worst_dft = 0.0;
  double worst_parseval = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto block = random_block(cfg, cs, rng);
    const auto fast = idft(block);
    const auto slow = oracle::idft(block.values);
    for (std::size_t m = 0; m < 64; ++m) worst_dft = std::max(worst_dft, std::abs(fast.samples[m] - slow[m]));
    worst_parseval = std::max(worst_parseval, std::abs(fast.energy() - block.energy()));
  }
  const auto subsets = oracle::all_subsets(16, 2);
  bool combinadic_ok = subsets.size() == binomial(16, 2);
  for (std::size_t r = 0; r < subsets.size(); ++r) {
    combinadic_ok = combinadic_ok && unrank_subset(r, 16, 2) == subsets[r] && rank_subset(subsets[r], 16) == r;
  }
  const bool ok = worst_dft <= 1e-9 && worst_parseval <= 1e-9 && combinadic_ok;
  return {ok, "max |idft - oracle| " + fmt("%.2e", worst_dft) + ", max Parseval error " +
                  fmt("%.2e", worst_parseval) + ", combinadic (16,2) " + (combinadic_ok ? "ok" : "mismatch")};
}

Verdict criterion8() {
  bool ok = true;
  std::string detail;
  for (std::size_t m = 3; m <= 8; ++m) {
    const auto bits = gen_mls(builtin_mls(m));
    const std::size_t period = (std::size_t{1} << m) - 1;
    bool this_ok = bits.size() == period;
    std::vector<int> b(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) b[i] = bits[i] ? -1 : 1;
    for (std::size_t s = 1; this_ok && s < period; ++s) {
      long acc = 0;
      for (std::size_t i = 0; i < period; ++i) acc += b[i] * b[(i + s) % period];
      this_ok = acc == -1;
    }
    ok = ok && this_ok;
    detail += " m=" + std::to_string(m) + (this_ok ? ":ok" : ":bad");
  }
  return {ok, "period and two-valued autocorrelation" + detail};
}

Verdict criterion9() {
  const TrialPlan plan{config(4), slm(4, PssSource::random, PermSource::random), 20011, kSeed,
                       default_gamma_grid(), 1};
  std::vector<std::string> outputs;
  for (std::size_t w : {1, 2, 8}) {
    std::ostringstream csv;
    write_ccdf_csv(csv, run_ccdf(plan, w));
    outputs.push_back(csv.str());
  }
  const bool ok = outputs[0] == outputs[1] && outputs[0] == outputs[2];
  return {ok, "workers 1, 2, 8: " + std::string(ok ? "byte-identical" : "differ") + " (" +
                  std::to_string(outputs[0].size()) + " bytes)"};
}

Verdict criterion10() {
  const auto cfg = config(2);
  // The permutation pair the seeded random arm uses; further seeded draws only if its mu is above 25.
  TrialPlan plan{cfg, slm(2, PssSource::random, PermSource::random), 1000000, kSeed, default_gamma_grid(), 1};
  auto instance = instantiate_scheme(plan);
  double mu = mu_metric(instance.perms[0], instance.perms[1], cfg).mu;
  Rng search(kSeed, StreamTag::analysis);
  std::size_t draws = 1;
  while (mu > 25.0 && draws < 1000) {
    instance.perms = gen_perm_set(cfg, 2, PermKind::random, search);
    mu = mu_metric(instance.perms[0], instance.perms[1], cfg).mu;
    ++draws;
  }
  if (mu > 25.0) return {false, "no pair with mu <= 25 found"};
  const auto low_mu = run_ccdf(plan, instance, workers());

  SchemeInstance identity{instance.pss, gen_perm_set(cfg, 2, PermKind::identity, search)};
  const auto id_curve = run_ccdf(plan, identity, workers());
  const double id_mu = mu_metric(identity.perms[0], identity.perms[1], cfg).mu;

  const auto dom = dominance(low_mu, id_curve);
  return {dom.holds, "pair mu " + fmt("%.2f", mu) + " (draw " + std::to_string(draws) + ") vs identity mu " +
                         fmt("%.0f", id_mu) + ", dominance over " + std::to_string(dom.points) + " points: " +
                         (dom.holds ? "yes" : "no, violations at" + dom.violations + " (worst " +
                                                  fmt("%.2f", dom.worst_z) + " sigma)")};
}

}  // namespace

int main() {
  Criterion3Curves keep;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"variance of rho closed form", criterion1},
      {"mu anchor for the identity pair", criterion2},
      {"permutation gain ordering", [&] { return criterion3(keep); }},
      {"SLM gain over plain OFDM-IM", criterion4},
      {"Hadamard PSS vs random PSS", [&] { return criterion5(keep); }},
      {"punctured spectrum bound", criterion6},
      {"IDFT, Parseval and combinadic oracles", criterion7},
      {"MLS period and autocorrelation", criterion8},
      {"worker-count determinism", criterion9},
      {"low-mu pair vs identity pair", criterion10},
  };
  std::size_t failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s [%zu] %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
