// Copyright 2026 The sinecrit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SINECRIT_STATS_HPP
#define SINECRIT_STATS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sinecrit/ensembles.hpp"
#include "sinecrit/zetaxi.hpp"

namespace sinecrit {

enum class ProcessTag { eigenvalues, critical_points, xi_zeros, xi_critical };

std::string to_string(ProcessTag tag);

/// Two-sided Wilson score interval at the given normal quantile.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials,
                                          double z = 1.96);

// ---------------------------------------------------------------------------
// Counting in (c - eps, c + eps)

/// Fills counts[ch * eps.size() + i] with the number of points of channel
/// `ch` inside (center - eps[i], center + eps[i]) for the configuration
/// drawn from `seed`.
using CountFn = std::function<void(std::uint64_t seed, double center, std::span<const double> eps,
                                   std::span<std::uint32_t> counts)>;

struct CountSampler {
  CountFn fn;
  double half_width = 0.0;  ///< usable window half-width, unfolded units
  std::vector<ProcessTag> channels;
};

/// Per channel and eps value, how many trials saw j points (the last bin
/// collects j >= cap).
struct CountHistogram {
  std::vector<ProcessTag> channels;
  std::vector<double> eps;
  std::uint64_t trials = 0;
  std::uint32_t cap = 0;
  std::vector<std::uint64_t> bins;  ///< [channel][eps][j], j in [0, cap]

  std::uint64_t& at(std::size_t ch, std::size_t e, std::size_t j) {
    return bins[(ch * eps.size() + e) * (cap + 1) + j];
  }
  std::uint64_t at(std::size_t ch, std::size_t e, std::size_t j) const {
    return bins[(ch * eps.size() + e) * (cap + 1) + j];
  }
  /// Trials with at least k points.
  std::uint64_t at_least(std::size_t ch, std::size_t e, std::uint32_t k) const;
  /// Merges another histogram with identical layout.
  void merge(const CountHistogram& other);
};

inline constexpr std::uint32_t kCountCap = 32;
inline constexpr std::size_t kTrialChunk = 4096;

/// Runs `trials` independent draws, each recentred at a uniform shift in
/// [-1/2, 1/2). Trial i uses derive_seed(seed, i), so the result does not
/// depend on `workers`.
CountHistogram count_histogram(const CountSampler& s, std::span<const double> eps,
                               std::uint64_t trials, std::uint64_t seed, unsigned workers = 1,
                               std::uint32_t cap = kCountCap);

struct OmegaEstimate {
  ProcessTag process = ProcessTag::eigenvalues;
  int k = 1;
  std::vector<double> eps;
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> hits;
  std::vector<double> lo;
  std::vector<double> hi;

  double p(std::size_t i) const {
    return static_cast<double>(hits[i]) / static_cast<double>(trials);
  }
};

OmegaEstimate omega_from_histogram(const CountHistogram& h, std::size_t channel, int k);

/// P(at least k points in (-eps, eps)) for channel 0 of the sampler.
OmegaEstimate omega_estimate(const CountSampler& s, int k, std::span<const double> eps,
                             std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

struct ExponentFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double intercept = 0.0;
  std::size_t bins_used = 0;
};

inline constexpr std::uint64_t kMinFitHits = 50;

/// Weighted least squares of log p on log eps over bins with at least 50
/// hits; weights from the Wilson widths.
ExponentFit exponent_fit(const OmegaEstimate& e);

// ---------------------------------------------------------------------------
// Samplers

/// Unit-intensity Poisson process.
CountSampler poisson_sampler(double half_width = 1e6);

/// Windows from a configuration generator. The critical channel, when
/// requested, counts roots of sum 1/(x_j - z) + level = 0.
CountSampler configuration_sampler(std::function<PointConfiguration(std::uint64_t)> draw,
                                   double half_width, std::vector<ProcessTag> channels,
                                   double level = 0.0);

/// GUE_N at energy E through the tridiagonal probe: eigenvalues and the
/// exact critical points of the characteristic polynomial, unfolded at E.
CountSampler gue_probe_sampler(std::size_t n, double energy, std::vector<ProcessTag> channels);

/// Zeta zeros (and optionally critical ordinates) around heights drawn
/// uniformly from [t_lo, t_hi], unfolded with the local density.
CountSampler xi_table_sampler(std::shared_ptr<const ZeroTable> zeros,
                              std::shared_ptr<const std::vector<double>> critical, double t_lo,
                              double t_hi);

// ---------------------------------------------------------------------------
// Theorem 1 events

struct Theorem1Result {
  bool omega_critical = false;  ///< >= k critical points in (-eps, eps)
  bool omega_enlarged = false;  ///< >= k+1 points in (-(1 + 4/(k-1)) eps, ...)
  bool omega_far = false;       ///< >= k+2 points in (-R eps, R eps)
  bool threshold_plus = false;  ///< sum_{|x-eps| >= (R-1)eps} 1/(x-eps) + a >= (k-1)/(4 eps)
  bool threshold_minus = false; ///< sum_{|x+eps| >= (R-1)eps} 1/(x+eps) + a <= -(k-1)/(4 eps)
  double sum_plus = 0.0;
  double sum_minus = 0.0;
  std::size_t critical_inside = 0;
  std::size_t points_inside = 0;

  bool excluded_event() const { return omega_critical && !omega_enlarged && !omega_far; }
  bool inclusion_holds() const { return !excluded_event() || threshold_plus || threshold_minus; }
};

/// Evaluates the events on a window whose critical points solve
/// sum 1/(x_j - z) + level = 0. Pass level 0 with a full spectrum.
Theorem1Result theorem1_event_check(const PointConfiguration& w, double level, int k, double eps,
                                    double r);


struct Theorem1Tally {
  std::uint64_t trials = 0;
  std::uint64_t omega_critical = 0;
  std::uint64_t excluded = 0;   ///< Omega_k(crit) without either zero event
  std::uint64_t checked = 0;    ///< configurations whose thresholds were evaluated
  std::uint64_t violations = 0; ///< excluded event with neither threshold event
  std::uint64_t mismatches = 0; ///< probe counts disagreeing with the full spectrum

  void merge(const Theorem1Tally& o);
};

/// GUE_N at energy E: events from the probe; the thresholds are evaluated
/// on the full unfolded spectrum whenever the excluded event occurs.
Theorem1Tally theorem1_gue(std::size_t n, double energy, int k, double eps, double r,
                           std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

/// Every drawn configuration goes through theorem1_event_check.
Theorem1Tally theorem1_configs(const std::function<PointConfiguration(std::uint64_t)>& draw,
                               double level, int k, double eps, double r, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers = 1);

/// Unit Poisson points on [-half_width, half_width].
PointConfiguration poisson_window(double half_width, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Form factor

inline double form_factor_weight(double u) { return 4.0 / (4.0 + u * u); }

struct FormFactorEstimate {
  std::vector<double> alpha;
  std::vector<double> unweighted;
  std::vector<double> unweighted_se;
  std::vector<double> weighted;  ///< with 4/(4 + (s dx)^2)
  std::vector<double> weighted_se;
  std::vector<double> imag_unweighted;  ///< symmetry diagnostic
  double window_length = 0.0;
  double raw_scale = 1.0;
  double mean_count = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMinFormFactorConfigs = 100;

FormFactorEstimate form_factor(std::span<const PointConfiguration> configs,
                               std::span<const double> alpha, double raw_scale = 1.0);

/// |a| - 4a^2 + sum_k (k-1)!/(2k)! (2|a|)^{2k+1} for 0 < a < 1.
double fgl_curve(double alpha);

// ---------------------------------------------------------------------------
// Spacing statistics

/// (|second closest eigenvalue to 0|, |second closest critical point to 0|),
/// both times `scale`.
std::pair<double, double> second_closest_stat(const SpectrumSample& s, double scale);
inline double default_second_closest_scale(std::size_t n) {
  return static_cast<double>(n) * 3.14159265358979323846;
}

struct TailBoundSpec {
  double sup_norm = 1.0;
  double expected_square_sum = 1.0;
  std::vector<double> r;
};

/// exp(-A*(r)) on the grid, A* maximised over t <= 1/sup_norm in closed form.
std::vector<double> tail_bound(const TailBoundSpec& t);
double legendre_dual(double r, double sup_norm, double expected_square_sum);

inline constexpr std::uint64_t kMinVarianceTrials = 10000;

/// Sample variance of the count in an interval of length R per grid value.
std::vector<double> count_variance(const CountSampler& s, std::span<const double> r_grid,
                                   std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);


/// F = sum over |x - eps| >= (R-1) eps of 1/(x - eps) on GUE_N unfolded at
/// E, one value per trial in trial order.
std::vector<double> truncated_statistic_sample(std::size_t n, double energy, double eps, double r,
                                               std::uint64_t trials, std::uint64_t seed,
                                               unsigned workers = 1);

/// Windows of the discretised sine process, window i seeded by
/// derive_seed(seed, i).
std::vector<PointConfiguration> dpp_windows(double radius, std::size_t count, std::uint64_t seed,
                                            unsigned workers = 1);

/// Eigenvalue and critical-point second-closest statistics per sample.
std::pair<std::vector<double>, std::vector<double>> second_closest_samples(
    std::size_t n, std::size_t samples, std::uint64_t seed, double scale, unsigned workers = 1);

/// Consecutive critical-point spacings of GUE_N unfolded at E, keeping
/// pairs inside |x| <= bulk.
std::vector<double> gue_critical_spacings(std::size_t n, std::size_t samples, std::uint64_t seed,
                                          double energy, double bulk, unsigned workers = 1);

struct WStatistics {
  std::vector<double> heights;  ///< R in z = iR
  std::vector<std::complex<double>> mean;
  std::vector<double> second_moment;  ///< mean |W(iR) - i pi|^2
  std::vector<double> second_moment_se;
  std::size_t samples = 0;
};

/// W_{t,T}(iR) over heights t drawn uniformly from [t_lo, t_hi], optionally
/// with the unit-density tail beyond the radius added back.
WStatistics w_statistics(const ZeroTable& z, double t_lo, double t_hi, std::size_t samples,
                         double radius, std::span<const double> heights, std::uint64_t seed,
                         double big_t, UnfoldingScale scale, bool tail = false);

/// Re W_{t,T}(i eta) / pi over heights t drawn uniformly from [t_lo, t_hi].
std::vector<double> cauchy_sample(const ZeroTable& z, double t_lo, double t_hi, std::size_t draws,
                                  double eta, double radius, std::uint64_t seed, double big_t,
                                  UnfoldingScale scale);

double cauchy_cdf(double x);
double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf);
double ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace sinecrit

#endif  // SINECRIT_STATS_HPP
