#include "ofdmim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ofdmim {

namespace {

// w[t] = e^{-j2pi t/N} with w[t + N/4] = -j w[t] and w[t + N/2] = -w[t] holding exactly.
class RootTable {
 public:
  explicit RootTable(std::size_t n) : n_(n), w_(n) {
    if (n < 4) {
      for (std::size_t t = 0; t < n; ++t) {
        w_[t] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n));
      }
      if (n == 2) w_[1] = {-1.0, 0.0};
      return;
    }
    const std::size_t quarter = n / 4;
    for (std::size_t t = 0; t < quarter; ++t) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
      w_[t] = {std::cos(angle), -std::sin(angle)};
    }
    w_[0] = {1.0, 0.0};
    for (std::size_t t = quarter; t < 2 * quarter; ++t) {
      const cplx v = w_[t - quarter];
      w_[t] = {v.imag(), -v.real()};
    }
    for (std::size_t t = 2 * quarter; t < n; ++t) w_[t] = -w_[t - 2 * quarter];
  }

  const cplx& operator[](std::size_t t) const noexcept { return w_[t % n_]; }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::vector<cplx> w_;
};

std::size_t mod_mul(std::size_t a, std::size_t b, std::size_t n) { return (a % n) * (b % n) % n; }

}  // namespace

cplx rho_at(std::span<const std::size_t> active, std::size_t n_fft, std::size_t groups,
            std::size_t m) {
  if (active.empty()) throw ConfigError("activation pattern is empty");
  const RootTable w(n_fft);
  std::vector<cplx> per_group(groups);
  for (std::size_t i : active) per_group[i % groups] += w[mod_mul(i, m, n_fft)];
  cplx sum{};
  for (const auto& a : per_group) sum += a;
  return sum / static_cast<double>(active.size());
}

CorrelationProfile rho_profile(std::span<const std::size_t> active, std::size_t n_fft,
                               std::size_t groups) {
  CorrelationProfile profile;
  profile.rho.resize(n_fft);
  for (std::size_t m = 0; m < n_fft; ++m) profile.rho[m] = rho_at(active, n_fft, groups, m);
  return profile;
}

CorrelationProfile rho_profile(const Sap& sap, const SystemConfig& cfg) {
  return rho_profile(sap.active(), cfg.n_fft(), cfg.groups());
}

double var_rho_closed_form(const SystemConfig& cfg, std::size_t m) {
  const double n = static_cast<double>(cfg.group_size());
  const double k = static_cast<double>(cfg.active());
  if (m % cfg.group_size() == 0) return 0.0;
  return (1.0 / static_cast<double>(cfg.n_fft())) * (n / (n - 1.0)) * (n / k - 1.0);
}

void ComplexMoments::add(cplx z) noexcept {
  if (count_ == 0) shift_ = z;
  const cplx d = z - shift_;
  sum_ += d;
  sum_sq_ += std::norm(d);
  ++count_;
}

cplx ComplexMoments::mean() const noexcept {
  if (count_ == 0) return {};
  return shift_ + sum_ / static_cast<double>(count_);
}

double ComplexMoments::variance() const noexcept {
  if (count_ == 0) return 0.0;
  const double n = static_cast<double>(count_);
  return std::max(0.0, sum_sq_ / n - std::norm(sum_ / n));
}

double var_rho_empirical(const SystemConfig& cfg, std::size_t m, std::size_t trials, Rng& rng) {
  if (trials == 0) throw ConfigError("var_rho_empirical needs at least one trial");
  ComplexMoments moments;
  for (std::size_t t = 0; t < trials; ++t) {
    const Sap sap = sample_random_sap(cfg, rng);
    moments.add(rho_at(sap.active(), cfg.n_fft(), cfg.groups(), m));
  }
  return moments.variance();
}

double PssSpectrum::max_magnitude() const noexcept {
  return magnitudes.empty() ? 0.0 : *std::max_element(magnitudes.begin(), magnitudes.end());
}

PssSpectrum punctured_spectrum(const PhaseSequence& p1, const PhaseSequence& p2,
                               std::span<const std::size_t> active) {
  const std::size_t n = p1.size();
  if (p2.size() != n) throw ConfigError("phase sequences differ in length");
  const RootTable w(n);
  PssSpectrum spectrum;
  spectrum.magnitudes.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    cplx sum{};
    for (std::size_t i : active) {
      if (i >= n) throw ConfigError("active index out of range");
      sum += p1[i] * std::conj(p2[i]) * std::conj(w[mod_mul(i, m, n)]);
    }
    spectrum.magnitudes[m] = std::abs(sum) / static_cast<double>(n);
  }
  return spectrum;
}

PssSpectrum full_spectrum(const PhaseSequence& p1, const PhaseSequence& p2) {
  std::vector<std::size_t> all(p1.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  PssSpectrum spectrum = punctured_spectrum(p1, p2, all);
  spectrum.c = spectrum.max_magnitude();
  return spectrum;
}

double punctured_bound(double c, const SystemConfig& cfg) { return c + 1.0 - cfg.mean_power(); }

MuReport mu_metric(const PermutationFunction& d1, const PermutationFunction& d2,
                   const SystemConfig& cfg, std::size_t u, std::size_t v) {
  const std::size_t n = cfg.n_fft();
  if (d1.size() != n || d2.size() != n) throw ConfigError("permutation length must equal N");
  const RootTable w(n);

  // sigma = d1 o d2^{-1}; the grid depends on the pair only through sigma.
  std::vector<std::size_t> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = d1(d2.inverse(i));

  MuReport report;
  report.rows = n;
  report.cols = n;
  report.u = u;
  report.v = v;
  report.grid.resize(n * n);

  // Collect integer exponent counts, then fold antipodal roots so sums that
  // cancel in exact arithmetic give exactly zero.
  std::vector<long> counts(n);
  const std::size_t half = n >= 2 ? n / 2 : 1;
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = 0; m < n; ++m) {
      std::fill(counts.begin(), counts.end(), 0L);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t e = (mod_mul(i, m, n) + n - mod_mul(sigma[i], l, n)) % n;
        ++counts[e];
      }
      cplx sum{};
      if (n >= 2) {
        for (std::size_t e = 0; e < half; ++e) {
          const long a = counts[e] - counts[e + half];
          if (a != 0) sum += static_cast<double>(a) * std::conj(w[e]);
        }
      } else {
        sum = static_cast<double>(counts[0]);
      }
      report.grid[l * n + m] = std::abs(sum);
    }
  }

  const double cells = static_cast<double>(n * n);
  double total = 0.0;
  for (double g : report.grid) total += g;
  report.mean_magnitude = total / cells;
  double acc = 0.0;
  for (double g : report.grid) acc += (g - report.mean_magnitude) * (g - report.mean_magnitude);
  report.mu = acc / cells;
  return report;
}

std::vector<MuReport> mu_metric_pairs(const PermutationSet& perms, const SystemConfig& cfg) {
  if (perms.count() < 2) throw ConfigError("mu needs at least two permutation functions");
  std::vector<MuReport> reports;
  for (std::size_t a = 0; a < perms.count(); ++a) {
    for (std::size_t b = a + 1; b < perms.count(); ++b) {
      reports.push_back(mu_metric(perms[a], perms[b], cfg, a, b));
    }
  }
  return reports;
}

double mu_metric_set(const PermutationSet& perms, const SystemConfig& cfg) {
  const auto reports = mu_metric_pairs(perms, cfg);
  double sum = 0.0;
  for (const auto& r : reports) sum += r.mu;
  return sum / static_cast<double>(reports.size());
}

cplx cov_analytic(const CandidatePair& pair, std::span<const std::size_t> active, std::size_t l,
                  std::size_t m) {
  const std::size_t n = pair.p1.size();
  const RootTable w(n);
  cplx sum{};
  for (std::size_t i : active) {
    const std::size_t a = pair.d1(i);
    const std::size_t b = pair.d2(i);
    const std::size_t e = (mod_mul(a, l, n) + n - mod_mul(b, m, n)) % n;
    sum += pair.p1[a] * std::conj(pair.p2[b]) * std::conj(w[e]);
  }
  return sum / static_cast<double>(n);
}

CovarianceEstimate cov_alt_signals(const CandidatePair& pair, std::span<const std::size_t> active,
                                   std::size_t l, std::size_t m, const Constellation& constellation,
                                   std::size_t trials, Rng& rng) {
  if (trials < 2) throw ConfigError("covariance estimate needs at least two trials");
  const std::size_t n = pair.p1.size();
  if (pair.p2.size() != n || pair.d1.size() != n || pair.d2.size() != n) {
    throw ConfigError("candidate pair lengths differ");
  }
  const RootTable w(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));

  // Per-active-index coefficients of x_1(l) and x_2(m).
  std::vector<cplx> coef1, coef2;
  coef1.reserve(active.size());
  coef2.reserve(active.size());
  for (std::size_t i : active) {
    const std::size_t a = pair.d1(i);
    const std::size_t b = pair.d2(i);
    coef1.push_back(pair.p1[a] * std::conj(w[mod_mul(a, l, n)]) * scale);
    coef2.push_back(pair.p2[b] * std::conj(w[mod_mul(b, m, n)]) * scale);
  }

  ComplexMoments product;
  cplx sum1{}, sum2{};
  for (std::size_t t = 0; t < trials; ++t) {
    cplx x1{}, x2{};
    for (std::size_t s = 0; s < coef1.size(); ++s) {
      const cplx symbol = constellation[rng.below(constellation.order())];
      x1 += coef1[s] * symbol;
      x2 += coef2[s] * symbol;
    }
    product.add(x1 * std::conj(x2));
    sum1 += x1;
    sum2 += x2;
  }
  const double count = static_cast<double>(trials);
  CovarianceEstimate est;
  est.empirical = product.mean() - (sum1 / count) * std::conj(sum2 / count);
  est.analytic = cov_analytic(pair, active, l, m);
  est.standard_error = std::sqrt(product.variance() / count);
  return est;
}

}  // namespace ofdmim
