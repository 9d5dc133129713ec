#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ofdmim/config.hpp"
#include "ofdmim/constellation.hpp"
#include "ofdmim/ofdm_im.hpp"
#include "ofdmim/random.hpp"
#include "ofdmim/slm.hpp"

namespace ofdmim {

/// rho_I(m) for m = 0..N-1: correlation coefficient between x(l) and x(l+m).
struct CorrelationProfile {
  std::vector<cplx> rho;
};

/**
 * rho(m) = (1/|I|) sum_{i in I} e^{-j2pi im/N}.
 *
 * Sums group by group (the A_g terms) with an exactly antisymmetric root
 * table, so patterns that differ only inside residue classes give
 * bit-identical rho at m = 0 mod n.
 */
CorrelationProfile rho_profile(std::span<const std::size_t> active, std::size_t n_fft,
                               std::size_t groups);
CorrelationProfile rho_profile(const Sap& sap, const SystemConfig& cfg);
cplx rho_at(std::span<const std::size_t> active, std::size_t n_fft, std::size_t groups, std::size_t m);

/// var(rho_I(m)) for uniformly random patterns:
/// (1/N)(n/(n-1))(n/k - 1) when m != 0 mod n, else 0.
double var_rho_closed_form(const SystemConfig& cfg, std::size_t m);

/// Sample variance E|rho|^2 - |E rho|^2 over `trials` uniform pattern draws.
double var_rho_empirical(const SystemConfig& cfg, std::size_t m, std::size_t trials, Rng& rng);

/// Running complex mean/variance; variance is E|z - E z|^2. Shifted by the
/// first sample so a constant stream yields exactly zero.
class ComplexMoments {
 public:
  void add(cplx z) noexcept;
  std::size_t count() const noexcept { return count_; }
  cplx mean() const noexcept;
  double variance() const noexcept;

 private:
  std::size_t count_ = 0;
  cplx shift_{};
  cplx sum_{};
  double sum_sq_ = 0.0;
};

/// Cross-correlation spectrum (1/N)|sum_{i in I} P1(i) P2*(i) e^{j2pi im/N}|.
struct PssSpectrum {
  std::vector<double> magnitudes;
  /// Set only for the full index set: max over m of the full spectrum.
  std::optional<double> c;

  double max_magnitude() const noexcept;
};

PssSpectrum punctured_spectrum(const PhaseSequence& p1, const PhaseSequence& p2,
                               std::span<const std::size_t> active);
PssSpectrum full_spectrum(const PhaseSequence& p1, const PhaseSequence& p2);

/// Upper bound c + 1 - k/n on any punctured spectrum of a pair with full-spectrum max c.
double punctured_bound(double c, const SystemConfig& cfg);

/**
 * Permutation-pair quality metric.
 *
 * grid(l, m) = |sum_{i'} e^{j2pi(i'm - d1(d2^{-1}(i'))l)/N}| over (l, m) in
 * [0, N)^2, and mu is the population variance of the N^2 magnitudes. The
 * constant k(n-k)/(n(n-1)) sqrt(N) prefactor is left out, which puts the
 * identity pair at exactly N - 1.
 */
struct MuReport {
  double mu = 0.0;
  double mean_magnitude = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t u = 0;
  std::size_t v = 1;
  std::vector<double> grid;  // row-major, grid[l * cols + m]
};

MuReport mu_metric(const PermutationFunction& d1, const PermutationFunction& d2,
                   const SystemConfig& cfg, std::size_t u = 0, std::size_t v = 1);
/// Every unordered pair u < v of the set.
std::vector<MuReport> mu_metric_pairs(const PermutationSet& perms, const SystemConfig& cfg);
/// Mean of mu over all unordered pairs; needs U >= 2.
double mu_metric_set(const PermutationSet& perms, const SystemConfig& cfg);

/// Covariance between x_1(l) and x_2(m) of two SLM candidates for one fixed pattern.
struct CovarianceEstimate {
  cplx empirical{};
  cplx analytic{};
  double standard_error = 0.0;  // of the empirical estimate, sqrt(E|z - Ez|^2 / T)
};

struct CandidatePair {
  const PhaseSequence& p1;
  const PhaseSequence& p2;
  const PermutationFunction& d1;
  const PermutationFunction& d2;
};

/// (1/N) sum_{i in I} P1(d1(i)) P2*(d2(i)) e^{j2pi(d1(i) l - d2(i) m)/N}.
cplx cov_analytic(const CandidatePair& pair, std::span<const std::size_t> active, std::size_t l,
                  std::size_t m);

/// Monte-Carlo covariance over random unit-power symbols on a fixed pattern.
CovarianceEstimate cov_alt_signals(const CandidatePair& pair, std::span<const std::size_t> active,
                                   std::size_t l, std::size_t m, const Constellation& constellation,
                                   std::size_t trials, Rng& rng);

}  // namespace ofdmim
