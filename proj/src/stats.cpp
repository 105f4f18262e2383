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


#include "sinecrit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sinecrit/critpoints.hpp"
#include "sinecrit/error.hpp"
#include "sinecrit/parallel.hpp"
#include "sinecrit/rng.hpp"
#include "sinecrit/sineproc.hpp"

namespace sinecrit {

namespace {

constexpr std::uint64_t kShiftStream = 0x7368696674ULL;
constexpr double kPoissonKnuthMax = 30.0;

std::uint64_t poisson(Rng& rng, double lambda) {
  std::uint64_t total = 0;
  while (lambda > 0.0) {
    const double piece = std::min(lambda, kPoissonKnuthMax);
    lambda -= piece;
    const double limit = std::exp(-piece);
    double prod = rng.uniform_open();
    while (prod > limit) {
      ++total;
      prod *= rng.uniform_open();
    }
  }
  return total;
}

// Open-interval count of a sorted range.
template <typename It>
std::uint32_t count_open(It first, It last, double lo, double hi) {
  if (!(hi > lo)) return 0;
  const auto a = std::upper_bound(first, last, lo);
  const auto b = std::lower_bound(a, last, hi);
  return static_cast<std::uint32_t>(b - a);
}

double field_at(std::span<const double> pts, double z, double level) {
  CompensatedSum s;
  for (double x : pts) s.add(1.0 / (x - z));
  return s.value() + level;
}

}  // namespace

std::string to_string(ProcessTag tag) {
  switch (tag) {
    case ProcessTag::eigenvalues: return "eigenvalues";
    case ProcessTag::critical_points: return "critical-points";
    case ProcessTag::xi_zeros: return "xi-zeros";
    case ProcessTag::xi_critical: return "xi-critical";
  }
  return "unknown";
}

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) throw InvalidArgument("wilson interval: zero trials");
  if (hits > trials) throw InvalidArgument("wilson interval: hits exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::uint64_t CountHistogram::at_least(std::size_t ch, std::size_t e, std::uint32_t k) const {
  std::uint64_t total = 0;
  for (std::size_t j = std::min<std::size_t>(k, cap); j <= cap; ++j) total += at(ch, e, j);
  return total;
}

void CountHistogram::merge(const CountHistogram& other) {
  if (other.bins.size() != bins.size() || other.cap != cap)
    throw InvalidArgument("count histogram: layout mismatch in merge");
  for (std::size_t i = 0; i < bins.size(); ++i) bins[i] += other.bins[i];
  trials += other.trials;
}

CountHistogram count_histogram(const CountSampler& s, std::span<const double> eps,
                               std::uint64_t trials, std::uint64_t seed, unsigned workers,
                               std::uint32_t cap) {
  if (trials == 0) throw InvalidArgument("count histogram: trials must be positive");
  if (!s.fn || s.channels.empty()) throw InvalidArgument("count histogram: empty sampler");
  if (eps.empty()) throw InvalidArgument("count histogram: empty eps grid");
  for (double e : eps) {
    if (!(e >= 0.0) || !std::isfinite(e))
      throw InvalidArgument("count histogram: eps must be finite and non-negative");
    if (!(e < s.half_width / 8.0))
      throw InvalidArgument("count histogram: eps must stay below half_width / 8");
  }
  CountHistogram proto;
  proto.channels = s.channels;
  proto.eps.assign(eps.begin(), eps.end());
  proto.cap = cap;
  proto.bins.assign(s.channels.size() * eps.size() * (cap + 1), 0);

  const TrialChunks chunks{static_cast<std::size_t>(trials), kTrialChunk};
  auto parts = run_tasks(chunks.count(), workers, [&](std::size_t c) {
    CountHistogram h = proto;
    std::vector<std::uint32_t> counts(s.channels.size() * eps.size());
    for (std::size_t i = chunks.begin(c); i < chunks.end(c); ++i) {
      const std::uint64_t ts = derive_seed(seed, i);
      Rng shift_rng(derive_seed(ts, kShiftStream));
      const double centre = shift_rng.uniform() - 0.5;
      std::fill(counts.begin(), counts.end(), 0u);
      s.fn(ts, centre, eps, counts);
      for (std::size_t ch = 0; ch < s.channels.size(); ++ch)
        for (std::size_t e = 0; e < eps.size(); ++e)
          ++h.at(ch, e, std::min(counts[ch * eps.size() + e], cap));
      ++h.trials;
    }
    return h;
  });
  CountHistogram out = proto;
  for (const auto& p : parts) out.merge(p);
  return out;
}

OmegaEstimate omega_from_histogram(const CountHistogram& h, std::size_t channel, int k) {
  if (k < 1) throw InvalidArgument("omega estimate: k must be at least 1");
  if (static_cast<std::uint32_t>(k) > h.cap) throw InvalidArgument("omega estimate: k above cap");
  if (channel >= h.channels.size()) throw InvalidArgument("omega estimate: no such channel");
  if (h.trials == 0) throw InvalidArgument("omega estimate: trials must be positive");
  OmegaEstimate out;
  out.process = h.channels[channel];
  out.k = k;
  out.eps = h.eps;
  out.trials = h.trials;
  for (std::size_t e = 0; e < h.eps.size(); ++e) {
    const std::uint64_t hits = h.at_least(channel, e, static_cast<std::uint32_t>(k));
    const auto [lo, hi] = wilson_interval(hits, h.trials);
    out.hits.push_back(hits);
    out.lo.push_back(lo);
    out.hi.push_back(hi);
  }
  return out;
}

OmegaEstimate omega_estimate(const CountSampler& s, int k, std::span<const double> eps,
                             std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  if (k < 1) throw InvalidArgument("omega estimate: k must be at least 1");
  return omega_from_histogram(count_histogram(s, eps, trials, seed, workers), 0, k);
}

ExponentFit exponent_fit(const OmegaEstimate& e) {
  std::vector<double> x, y, w;
  for (std::size_t i = 0; i < e.eps.size(); ++i) {
    if (e.hits[i] < kMinFitHits || e.hits[i] >= e.trials || !(e.eps[i] > 0.0)) continue;
    const double p = e.p(i);
    const double sigma = (e.hi[i] - e.lo[i]) / (2.0 * 1.96) / p;
    x.push_back(std::log(e.eps[i]));
    y.push_back(std::log(p));
    w.push_back(1.0 / (sigma * sigma));
  }
  if (x.size() < 3) throw NumericalError("exponent fit: fewer than three bins with enough hits");
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    sxy += w[i] * (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw NumericalError("exponent fit: degenerate eps grid");
  ExponentFit f;
  f.slope = sxy / sxx;
  f.stderr_slope = 1.0 / std::sqrt(sxx);
  f.intercept = my - f.slope * mx;
  f.bins_used = x.size();
  return f;
}

CountSampler poisson_sampler(double half_width) {
  CountSampler s;
  s.half_width = half_width;
  s.channels = {ProcessTag::eigenvalues};
  s.fn = [](std::uint64_t seed, double centre, std::span<const double> eps,
            std::span<std::uint32_t> counts) {
    Rng rng(seed);
    const double big = *std::max_element(eps.begin(), eps.end());
    const std::uint64_t n = poisson(rng, 2.0 * big);
    for (std::uint64_t j = 0; j < n; ++j) {
      const double d = std::abs((2.0 * rng.uniform() - 1.0) * big);
      for (std::size_t i = 0; i < eps.size(); ++i)
        if (d < eps[i]) ++counts[i];
    }
    (void)centre;
  };
  return s;
}

CountSampler configuration_sampler(std::function<PointConfiguration(std::uint64_t)> draw,
                                   double half_width, std::vector<ProcessTag> channels,
                                   double level) {
  for (auto c : channels)
    if (c != ProcessTag::eigenvalues && c != ProcessTag::critical_points)
      throw InvalidArgument("configuration sampler: unsupported channel " + to_string(c));
  CountSampler s;
  s.half_width = half_width;
  s.channels = channels;
  s.fn = [draw = std::move(draw), channels, level](std::uint64_t seed, double centre,
                                                    std::span<const double> eps,
                                                    std::span<std::uint32_t> counts) {
    PointConfiguration cfg = draw(seed);
    auto& pts = cfg.points;
    std::sort(pts.begin(), pts.end());
    for (std::size_t ch = 0; ch < channels.size(); ++ch) {
      for (std::size_t i = 0; i < eps.size(); ++i) {
        const double u = centre - eps[i];
        const double v = centre + eps[i];
        const std::uint32_t inside = count_open(pts.begin(), pts.end(), u, v);
        std::uint32_t c = inside;
        if (channels[ch] == ProcessTag::critical_points) {
          c = eps[i] > 0.0 ? static_cast<std::uint32_t>(count_level_roots(
                                 inside, field_at(pts, u, level), field_at(pts, v, level)))
                           : 0u;
        }
        counts[ch * eps.size() + i] = c;
      }
    }
  };
  return s;
}

CountSampler gue_probe_sampler(std::size_t n, double energy, std::vector<ProcessTag> channels) {
  if (n < 2) throw InvalidArgument("gue probe sampler: N must be at least 2");
  if (!(std::abs(energy) < 2.0)) throw InvalidArgument("gue probe sampler: need |E| < 2");
  for (auto c : channels)
    if (c != ProcessTag::eigenvalues && c != ProcessTag::critical_points)
      throw InvalidArgument("gue probe sampler: unsupported channel " + to_string(c));
  CountSampler s;
  s.half_width = 0.5 * static_cast<double>(n) * semicircle_density(energy);
  s.channels = channels;
  s.fn = [n, energy, channels](std::uint64_t seed, double centre, std::span<const double> eps,
                               std::span<std::uint32_t> counts) {
    const UnfoldedProbe probe(sample_gue_tridiag(n, seed), energy);
    for (std::size_t i = 0; i < eps.size(); ++i) {
      if (!(eps[i] > 0.0)) continue;
      const auto ru = probe.read(centre - eps[i]);
      const auto rv = probe.read(centre + eps[i]);
      const std::size_t inside = rv.below - ru.below;
      for (std::size_t ch = 0; ch < channels.size(); ++ch) {
        const std::size_t c = channels[ch] == ProcessTag::critical_points
                                  ? count_level_roots(inside, ru.field, rv.field)
                                  : inside;
        counts[ch * eps.size() + i] = static_cast<std::uint32_t>(c);
      }
    }
  };
  return s;
}

CountSampler xi_table_sampler(std::shared_ptr<const ZeroTable> zeros,
                              std::shared_ptr<const std::vector<double>> critical, double t_lo,
                              double t_hi) {
  if (!zeros) throw InvalidArgument("xi sampler: missing zero table");
  if (!(t_lo > 2.0 * std::numbers::pi) || !(t_hi > t_lo))
    throw InvalidArgument("xi sampler: need 2 pi < t_lo < t_hi");
  if (t_lo <= zeros->t_min || t_hi >= zeros->t_max)
    throw InvalidArgument("xi sampler: height range must lie inside the table range");
  CountSampler s;
  const double dens = unfolding_density(t_lo, t_lo, UnfoldingScale::local);
  s.half_width = std::min(t_lo - zeros->t_min, zeros->t_max - t_hi) * dens;
  s.channels = {ProcessTag::xi_zeros};
  if (critical) s.channels.push_back(ProcessTag::xi_critical);
  s.fn = [zeros, critical, t_lo, t_hi](std::uint64_t seed, double centre,
                                       std::span<const double> eps,
                                       std::span<std::uint32_t> counts) {
    Rng rng(seed);
    const double t = t_lo + (t_hi - t_lo) * rng.uniform();
    const double d = unfolding_density(t, t, UnfoldingScale::local);
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const double lo = t + (centre - eps[i]) / d;
      const double hi = t + (centre + eps[i]) / d;
      counts[i] = count_open(zeros->ordinates.begin(), zeros->ordinates.end(), lo, hi);
      if (critical) counts[eps.size() + i] = count_open(critical->begin(), critical->end(), lo, hi);
    }
  };
  return s;
}

Theorem1Result theorem1_event_check(const PointConfiguration& w, double level, int k, double eps,
                                    double r) {
  if (k < 2) throw InvalidArgument("theorem1: k must be at least 2");
  if (!(eps > 0.0)) throw InvalidArgument("theorem1: eps must be positive");
  const double enlarge = 1.0 + 4.0 / (k - 1);
  if (!(r >= enlarge)) throw InvalidArgument("theorem1: R must be at least 1 + 4/(k-1)");
  if (w.half_width < r * eps) throw InvalidArgument("theorem1: window narrower than R eps");
  const auto& x = w.points;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (!(x[i + 1] > x[i])) throw InvalidArgument("theorem1: points must ascend strictly");

  Theorem1Result out;
  out.points_inside = count_open(x.begin(), x.end(), -eps, eps);
  out.critical_inside =
      count_level_roots(out.points_inside, field_at(x, -eps, level), field_at(x, eps, level));
  const auto ku = static_cast<std::size_t>(k);
  out.omega_critical = out.critical_inside >= ku;
  out.omega_enlarged = count_open(x.begin(), x.end(), -enlarge * eps, enlarge * eps) >= ku + 1;
  out.omega_far = count_open(x.begin(), x.end(), -r * eps, r * eps) >= ku + 2;

  const double cut = (r - 1.0) * eps;
  CompensatedSum plus, minus;
  for (double p : x) {
    if (std::abs(p - eps) >= cut) plus.add(1.0 / (p - eps));
    if (std::abs(p + eps) >= cut) minus.add(1.0 / (p + eps));
  }
  out.sum_plus = plus.value() + level;
  out.sum_minus = minus.value() + level;
  const double threshold = (k - 1) / (4.0 * eps);
  out.threshold_plus = out.sum_plus >= threshold;
  out.threshold_minus = out.sum_minus <= -threshold;
  return out;
}

void Theorem1Tally::merge(const Theorem1Tally& o) {
  trials += o.trials;
  omega_critical += o.omega_critical;
  excluded += o.excluded;
  checked += o.checked;
  violations += o.violations;
  mismatches += o.mismatches;
}

Theorem1Tally theorem1_gue(std::size_t n, double energy, int k, double eps, double r,
                           std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  if (k < 2) throw InvalidArgument("theorem1: k must be at least 2");
  if (trials == 0) throw InvalidArgument("theorem1: trials must be positive");
  if (!(std::abs(energy) < 2.0)) throw InvalidArgument("theorem1: need |E| < 2");
  const double enlarge = 1.0 + 4.0 / (k - 1);
  if (!(eps > 0.0) || !(r >= enlarge)) throw InvalidArgument("theorem1: need eps > 0, R >= 1 + 4/(k-1)");
  const auto ku = static_cast<std::size_t>(k);
  const TrialChunks chunks{static_cast<std::size_t>(trials), kTrialChunk};
  auto parts = run_tasks(chunks.count(), workers, [&](std::size_t c) {
    Theorem1Tally t;
    for (std::size_t i = chunks.begin(c); i < chunks.end(c); ++i) {
      ++t.trials;
      const std::uint64_t ts = derive_seed(seed, i);
      const double centre = Rng(derive_seed(ts, kShiftStream)).uniform() - 0.5;
      const HermiteTridiagonal m = sample_gue_tridiag(n, ts);
      const UnfoldedProbe probe(m, energy);
      const auto ru = probe.read(centre - eps);
      const auto rv = probe.read(centre + eps);
      if (count_level_roots(rv.below - ru.below, ru.field, rv.field) < ku) continue;
      ++t.omega_critical;
      if (probe.count_in(centre - enlarge * eps, centre + enlarge * eps) >= ku + 1) continue;
      if (probe.count_in(centre - r * eps, centre + r * eps) >= ku + 2) continue;
      ++t.excluded;
      PointConfiguration w;
      w.center = energy;
      w.half_width = kNoTruncation;
      w.density = DensityModel::semicircle;
      w.points = unfold_all(spectrum(m), energy, centre);
      const Theorem1Result res = theorem1_event_check(w, 0.0, k, eps, r);
      ++t.checked;
      if (!res.inclusion_holds()) ++t.violations;
      if (!res.excluded_event()) ++t.mismatches;
    }
    return t;
  });
  Theorem1Tally out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

Theorem1Tally theorem1_configs(const std::function<PointConfiguration(std::uint64_t)>& draw,
                               double level, int k, double eps, double r, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers) {
  if (trials == 0) throw InvalidArgument("theorem1: trials must be positive");
  const TrialChunks chunks{static_cast<std::size_t>(trials), kTrialChunk};
  auto parts = run_tasks(chunks.count(), workers, [&](std::size_t c) {
    Theorem1Tally t;
    for (std::size_t i = chunks.begin(c); i < chunks.end(c); ++i) {
      ++t.trials;
      const Theorem1Result res = theorem1_event_check(draw(derive_seed(seed, i)), level, k, eps, r);
      ++t.checked;
      if (res.omega_critical) ++t.omega_critical;
      if (res.excluded_event()) ++t.excluded;
      if (!res.inclusion_holds()) ++t.violations;
    }
    return t;
  });
  Theorem1Tally out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

PointConfiguration poisson_window(double half_width, std::uint64_t seed) {
  if (!(half_width > 0.0)) throw InvalidArgument("poisson window: half width must be positive");
  Rng rng(seed);
  PointConfiguration w;
  w.half_width = half_width;
  const std::uint64_t n = poisson(rng, 2.0 * half_width);
  for (std::uint64_t j = 0; j < n; ++j) w.points.push_back((2.0 * rng.uniform() - 1.0) * half_width);
  std::sort(w.points.begin(), w.points.end());
  w.points.erase(std::unique(w.points.begin(), w.points.end()), w.points.end());
  return w;
}

FormFactorEstimate form_factor(std::span<const PointConfiguration> configs,
                               std::span<const double> alpha, double raw_scale) {
  if (configs.size() < kMinFormFactorConfigs)
    throw InvalidArgument("form factor: need at least 100 configurations");
  if (alpha.empty()) throw InvalidArgument("form factor: empty alpha grid");
  for (std::size_t i = 0; i + 1 < alpha.size(); ++i)
    if (!(alpha[i + 1] > alpha[i])) throw InvalidArgument("form factor: alpha grid must ascend");

  const std::size_t na = alpha.size();
  std::vector<double> su(na), su2(na), sw(na), sw2(na), si(na);
  double total_points = 0.0;
  for (const auto& c : configs) {
    const auto& x = c.points;
    total_points += static_cast<double>(x.size());
    for (std::size_t a = 0; a < na; ++a) {
      const double omega = 2.0 * std::numbers::pi * alpha[a];
      double u = 0.0, wsum = 0.0, im = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        for (std::size_t l = 0; l < x.size(); ++l) {
          if (j == l) continue;
          const double d = x[j] - x[l];
          const double cs = std::cos(omega * d);
          u += cs;
          wsum += cs * form_factor_weight(d * raw_scale);
          im += std::sin(omega * d);
        }
      }
      su[a] += u;
      su2[a] += u * u;
      sw[a] += wsum;
      sw2[a] += wsum * wsum;
      si[a] += im;
    }
  }
  const double m = static_cast<double>(configs.size());
  const double nbar = total_points / m;
  if (!(nbar > 0.0)) throw InvalidArgument("form factor: all windows are empty");

  FormFactorEstimate out;
  out.alpha.assign(alpha.begin(), alpha.end());
  out.window_length = 2.0 * configs.front().half_width;
  out.raw_scale = raw_scale;
  out.mean_count = nbar;
  out.samples = configs.size();
  auto se = [m, nbar](double s, double s2) {
    const double mean = s / m;
    const double var = std::max(0.0, (s2 - m * mean * mean) / (m - 1.0));
    return std::sqrt(var / m) / nbar;
  };
  for (std::size_t a = 0; a < na; ++a) {
    out.unweighted.push_back(su[a] / m / nbar + 1.0);
    out.unweighted_se.push_back(se(su[a], su2[a]));
    out.weighted.push_back(sw[a] / m / nbar + 1.0);
    out.weighted_se.push_back(se(sw[a], sw2[a]));
    out.imag_unweighted.push_back(si[a] / m / nbar);
  }
  return out;
}

double fgl_curve(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("fgl curve: alpha must lie in (0, 1)");
  const double x2 = 4.0 * alpha * alpha;
  double term = 0.5 * x2 * 2.0 * alpha;  // k = 1: (0!/2!) (2a)^3
  double sum = alpha - 4.0 * alpha * alpha;
  for (int k = 1; term >= 1e-16 && k < 200; ++k) {
    sum += term;
    term *= static_cast<double>(k) / ((2.0 * k + 1.0) * (2.0 * k + 2.0)) * x2;
  }
  return sum;
}

std::pair<double, double> second_closest_stat(const SpectrumSample& s, double scale) {
  if (s.eigenvalues.size() < 3) throw InvalidArgument("second closest: need N >= 3");
  auto second = [](std::vector<double> v) {
    std::partial_sort(v.begin(), v.begin() + 2, v.end(),
                      [](double a, double b) { return std::abs(a) < std::abs(b); });
    return std::abs(v[1]);
  };
  const auto crit = critical_points(s.eigenvalues);
  return {second(s.eigenvalues) * scale, second(crit.points) * scale};
}

double legendre_dual(double r, double sup_norm, double expected_square_sum) {
  if (!(sup_norm > 0.0)) throw InvalidArgument("tail bound: sup norm must be positive");
  if (!(r > 0.0)) return 0.0;
  const double t_max = 1.0 / sup_norm;
  const double es = std::numbers::e * expected_square_sum;
  if (es > 0.0 && r / es <= t_max) return r * r / (2.0 * es);
  return r * t_max - 0.5 * es * t_max * t_max;
}

std::vector<double> tail_bound(const TailBoundSpec& t) {
  std::vector<double> out;
  out.reserve(t.r.size());
  for (double r : t.r) out.push_back(std::exp(-legendre_dual(r, t.sup_norm, t.expected_square_sum)));
  return out;
}

std::vector<double> count_variance(const CountSampler& s, std::span<const double> r_grid,
                                   std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  if (trials < kMinVarianceTrials) throw InvalidArgument("count variance: need at least 1e4 trials");
  std::vector<double> half;
  double big = 0.0;
  for (double r : r_grid) {
    if (!(r > 0.0)) throw InvalidArgument("count variance: R must be positive");
    half.push_back(0.5 * r);
    big = std::max(big, r);
  }
  const auto cap = static_cast<std::uint32_t>(std::ceil(4.0 * big)) + 64;
  const CountHistogram h = count_histogram(s, half, trials, seed, workers, cap);
  std::vector<double> out;
  for (std::size_t e = 0; e < half.size(); ++e) {
    long double s1 = 0.0L, s2 = 0.0L;
    for (std::uint32_t j = 0; j <= cap; ++j) {
      const auto n = static_cast<long double>(h.at(0, e, j));
      s1 += n * j;
      s2 += n * j * j;
    }
    const auto n = static_cast<long double>(h.trials);
    out.push_back(static_cast<double>((s2 - s1 * s1 / n) / (n - 1.0L)));
  }
  return out;
}

std::vector<double> truncated_statistic_sample(std::size_t n, double energy, double eps, double r,
                                               std::uint64_t trials, std::uint64_t seed,
                                               unsigned workers) {
  if (trials == 0) throw InvalidArgument("truncated statistic: trials must be positive");
  if (!(eps > 0.0) || !(r > 1.0)) throw InvalidArgument("truncated statistic: need eps > 0, R > 1");
  if (!(std::abs(energy) < 2.0)) throw InvalidArgument("truncated statistic: need |E| < 2");
  const double cut = (r - 1.0) * eps;
  const TrialChunks chunks{static_cast<std::size_t>(trials), kTrialChunk};
  auto parts = run_tasks(chunks.count(), workers, [&](std::size_t c) {
    std::vector<double> out;
    out.reserve(chunks.end(c) - chunks.begin(c));
    for (std::size_t i = chunks.begin(c); i < chunks.end(c); ++i) {
      const std::uint64_t ts = derive_seed(seed, i);
      const double centre = Rng(derive_seed(ts, kShiftStream)).uniform() - 0.5;
      const UnfoldedProbe probe(sample_gue_tridiag(n, ts), energy);
      const double u = centre + eps;
      double f = probe.read(u).field;
      for (double x : probe.points_in(u - cut, u + cut)) f -= 1.0 / (x - u);
      out.push_back(f);
    }
    return out;
  });
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(trials));
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<PointConfiguration> dpp_windows(double radius, std::size_t count, std::uint64_t seed,
                                            unsigned workers) {
  const DppSpectral d = decompose(nystrom_sine_kernel(radius));
  const TrialChunks chunks{count, 256};
  auto parts = run_tasks(chunks.count(), workers, [&](std::size_t c) {
    std::vector<PointConfiguration> out;
    for (std::size_t i = chunks.begin(c); i < chunks.end(c); ++i)
      out.push_back(sample_dpp(d, derive_seed(seed, i)));
    return out;
  });
  std::vector<PointConfiguration> out;
  out.reserve(count);
  for (auto& p : parts)
    for (auto& w : p) out.push_back(std::move(w));
  return out;
}

std::pair<std::vector<double>, std::vector<double>> second_closest_samples(
    std::size_t n, std::size_t samples, std::uint64_t seed, double scale, unsigned workers) {
  if (n < 3) throw InvalidArgument("second closest: need N >= 3");
  const TrialChunks chunks{samples, 1024};
  auto parts = run_tasks(chunks.count(), workers, [&](std::size_t c) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = chunks.begin(c); i < chunks.end(c); ++i)
      out.push_back(second_closest_stat(sample_gue_spectrum(n, derive_seed(seed, i)), scale));
    return out;
  });
  std::pair<std::vector<double>, std::vector<double>> out;
  for (const auto& p : parts)
    for (const auto& [e, c] : p) {
      out.first.push_back(e);
      out.second.push_back(c);
    }
  return out;
}

std::vector<double> gue_critical_spacings(std::size_t n, std::size_t samples, std::uint64_t seed,
                                          double energy, double bulk, unsigned workers) {
  if (!(std::abs(energy) < 2.0)) throw InvalidArgument("critical spacings: need |E| < 2");
  const double scale = static_cast<double>(n) * semicircle_density(energy);
  const TrialChunks chunks{samples, 64};
  auto parts = run_tasks(chunks.count(), workers, [&](std::size_t c) {
    std::vector<double> out;
    for (std::size_t i = chunks.begin(c); i < chunks.end(c); ++i) {
      const auto s = sample_gue_spectrum(n, derive_seed(seed, i));
      const auto crit = critical_points(s.eigenvalues).points;
      for (std::size_t j = 0; j + 1 < crit.size(); ++j) {
        const double a = (crit[j] - energy) * scale;
        const double b = (crit[j + 1] - energy) * scale;
        if (std::abs(a) <= bulk && std::abs(b) <= bulk) out.push_back(b - a);
      }
    }
    return out;
  });
  std::vector<double> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

WStatistics w_statistics(const ZeroTable& z, double t_lo, double t_hi, std::size_t samples,
                         double radius, std::span<const double> heights, std::uint64_t seed,
                         double big_t, UnfoldingScale scale, bool tail) {
  if (samples < 2) throw InvalidArgument("w statistics: need at least two samples");
  if (!(t_hi > t_lo)) throw InvalidArgument("w statistics: need t_lo < t_hi");
  WStatistics out;
  out.heights.assign(heights.begin(), heights.end());
  out.samples = samples;
  const std::complex<double> ipi(0.0, std::numbers::pi);
  for (double h : heights) {
    if (!(h > 0.0)) throw InvalidArgument("w statistics: heights must be positive");
    std::complex<double> sum = 0.0;
    double m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const double t = t_lo + (t_hi - t_lo) * Rng(derive_seed(seed, i)).uniform();
      const auto w = w_tT(z, t, big_t, {0.0, h}, radius, scale, tail);
      sum += w;
      const double d = std::norm(w - ipi);
      m2 += d;
      m4 += d * d;
    }
    const double n = static_cast<double>(samples);
    out.mean.push_back(sum / n);
    out.second_moment.push_back(m2 / n);
    const double var = std::max(0.0, (m4 - m2 * m2 / n) / (n - 1.0));
    out.second_moment_se.push_back(std::sqrt(var / n));
  }
  return out;
}

std::vector<double> cauchy_sample(const ZeroTable& z, double t_lo, double t_hi, std::size_t draws,
                                  double eta, double radius, std::uint64_t seed, double big_t,
                                  UnfoldingScale scale) {
  if (draws == 0) throw InvalidArgument("cauchy sample: draws must be positive");
  if (!(eta > 0.0)) throw InvalidArgument("cauchy sample: eta must be positive");
  if (!(t_hi > t_lo)) throw InvalidArgument("cauchy sample: need t_lo < t_hi");
  std::vector<double> out;
  out.reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    const double t = t_lo + (t_hi - t_lo) * Rng(derive_seed(seed, i)).uniform();
    out.push_back(w_tT(z, t, big_t, {0.0, eta}, radius, scale).real() / std::numbers::pi);
  }
  return out;
}

double cauchy_cdf(double x) { return 0.5 + std::atan(x) / std::numbers::pi; }

double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw InvalidArgument("ks distance: empty sample");
  std::vector<double> v(sample.begin(), sample.end());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = cdf(v[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return std::min(1.0, d);
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("ks two-sample: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / x.size() - static_cast<double>(j) / y.size()));
  }
  return d;
}

}  // namespace sinecrit
