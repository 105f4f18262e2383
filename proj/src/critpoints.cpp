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


#include "sinecrit/critpoints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "sinecrit/error.hpp"
#include "sinecrit/linalg.hpp"

namespace sinecrit {
namespace {

void require_ascending(std::span<const double> x, const char* what) {
  for (double v : x)
    if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + ": non-finite point");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1]))
      throw InvalidArgument(std::string(what) + ": points must be strictly ascending (index " +
                            std::to_string(i) + ")");
}

std::pair<double, double> residual_and_slope(std::span<const double> x, std::span<const double> w,
                                             double level, double z) {
  CompensatedSum g;
  double gp = 0.0;
  g.add(level);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double inv = 1.0 / (x[j] - z);
    const double wj = w.empty() ? 1.0 : w[j];
    g.add(wj * inv);
    gp += wj * inv * inv;
  }
  return {g.value(), gp};
}

/// Newton steps in absolute coordinates while they shrink the residual.
double polish(std::span<const double> x, std::span<const double> w, double level, std::size_t k,
              double z) {
  auto [g, gp] = residual_and_slope(x, w, level, z);
  for (int it = 0; it < 3 && g != 0.0; ++it) {
    const double next = z - g / gp;
    if (!(next > x[k] && next < x[k + 1]) || next == z) break;
    const auto [gn, gpn] = residual_and_slope(x, w, level, next);
    if (!(std::abs(gn) < std::abs(g))) break;
    z = next;
    g = gn;
    gp = gpn;
  }
  return z;
}

/// Root of the increasing map delta -> sum_j w_j/(d_j - delta) + level on
/// (0, h), where d_j = x_j - x_k and the gap is (x_k, x_k + h).
double gap_root(std::span<const double> x, std::span<const double> w, std::size_t k,
                double level, double start) {
  const double xk = x[k];
  const double h = x[k + 1] - xk;
  const std::size_t n = x.size();
  const auto weight = [&](std::size_t j) { return w.empty() ? 1.0 : w[j]; };
  double lo = 0.0, hi = h;
  double delta = std::clamp(start, 1e-3, 1.0 - 1e-3) * h;
  const double width_tol = 4.0 * std::numeric_limits<double>::epsilon() * h;
  const double step_tol = std::numeric_limits<double>::epsilon() * h;
  for (int it = 0; it < 200; ++it) {
    CompensatedSum g;
    double gp = 0.0;
    g.add(level);
    for (std::size_t j = 0; j < n; ++j) {
      double d;
      if (j == k)
        d = -delta;
      else if (j == k + 1)
        d = h - delta;
      else
        d = (x[j] - xk) - delta;
      const double inv = 1.0 / d;
      const double wj = weight(j);
      g.add(wj * inv);
      gp += wj * inv * inv;
    }
    const double gv = g.value();
    if (gv == 0.0) break;
    if (gv < 0.0)
      lo = delta;
    else
      hi = delta;
    double next = delta - gv / gp;
    const bool newton_ok = std::isfinite(next) && next > lo && next < hi;
    if (!newton_ok) next = 0.5 * (lo + hi);
    const double step = std::abs(next - delta);
    delta = next;
    if ((newton_ok && step <= step_tol) || hi - lo <= width_tol) break;
  }
  double z = xk + delta;
  if (!(z > xk)) z = std::nextafter(xk, x[k + 1]);
  if (!(z < x[k + 1])) z = std::nextafter(x[k + 1], xk);
  return polish(x, w, level, k, z);
}

}  // namespace

CriticalPointSet solve_level(const LevelSetQuery& q, double lo, double hi) {
  const auto& x = q.points;
  if (x.size() < 2) throw InvalidArgument("level set needs at least 2 points");
  require_ascending(x, "solve_level");
  if (!q.weights.empty()) {
    if (q.weights.size() != x.size())
      throw InvalidArgument("weights must match points in length");
    for (double v : q.weights)
      if (!(v > 0.0) || !std::isfinite(v))
        throw InvalidArgument("weights must be strictly positive");
  }
  if (!std::isfinite(q.level)) throw InvalidArgument("level must be finite");
  CriticalPointSet out;
  out.level = q.level;
  double warm = 0.5;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    if (!(x[k + 1] > lo && x[k] < hi)) continue;
    const double z = gap_root(x, q.weights, k, q.level, warm);
    warm = (z - x[k]) / (x[k + 1] - x[k]);
    out.points.push_back(z);
    out.gaps.push_back(k);
  }
  if (out.points.empty()) throw InvalidArgument("subwindow meets no gap");
  return out;
}

CriticalPointSet solve_level(const LevelSetQuery& q) {
  return solve_level(q, -std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity());
}

double level_residual(const LevelSetQuery& q, double z) {
  CompensatedSum s;
  s.add(q.level);
  for (std::size_t j = 0; j < q.points.size(); ++j)
    s.add((q.weights.empty() ? 1.0 : q.weights[j]) / (q.points[j] - z));
  return s.value();
}

CriticalPointSet critical_points(std::span<const double> zeros) {
  if (zeros.size() < 2) throw InvalidArgument("critical points need at least 2 zeros");
  LevelSetQuery q{{zeros.begin(), zeros.end()}, 0.0, {}};
  return solve_level(q);
}

std::vector<std::vector<double>> higher_critical_points(std::span<const double> zeros,
                                                        int order) {
  std::vector<std::vector<double>> stages;
  std::vector<double> current(zeros.begin(), zeros.end());
  for (int k = 0; k < order; ++k) {
    current = critical_points(current).points;
    stages.push_back(current);
  }
  return stages;
}

std::complex<double> w_eval(std::span<const double> points, std::complex<double> z,
                            double radius) {
  CompensatedSum re, im;
  const double zr = z.real(), zi = z.imag();
  for (double x : points) {
    if (std::abs(x) > radius) continue;
    const double dr = x - zr;
    if (dr == 0.0 && zi == 0.0) throw PoleError("evaluation point coincides with a point");
    // 1/(dr - i zi) = (dr + i zi)/(dr^2 + zi^2)
    const double den = dr * dr + zi * zi;
    re.add(dr / den);
    im.add(zi / den);
  }
  return {re.value(), im.value()};
}

std::complex<double> phi_eval(std::span<const double> points, std::complex<double> z,
                              double radius) {
  for (double x : points)
    if (std::abs(x) <= radius && x == 0.0)
      throw InvalidArgument("phi is normalized at 0: no point may equal 0");
  for (double x : points)
    if (std::abs(x) <= radius && z.imag() == 0.0 && z.real() == x) return {0.0, 0.0};
  if (z.imag() == 0.0) {
    CompensatedSum logmag;
    int negatives = 0;
    for (double x : points) {
      if (std::abs(x) > radius) continue;
      const double f = 1.0 - z.real() / x;
      if (f < 0.0) ++negatives;
      logmag.add(std::log(std::abs(f)));
    }
    const double mag = std::exp(logmag.value());
    return {negatives % 2 == 0 ? mag : -mag, 0.0};
  }
  CompensatedSum re, im;
  for (double x : points) {
    if (std::abs(x) > radius) continue;
    const std::complex<double> f = std::log(1.0 - z / x);
    re.add(f.real());
    im.add(f.imag());
  }
  return std::exp(std::complex<double>{re.value(), im.value()});
}

int phi_sign(std::span<const double> points, double z, double radius) {
  int negatives = 0;
  for (double x : points) {
    if (std::abs(x) > radius) continue;
    if (x == 0.0) throw InvalidArgument("phi is normalized at 0: no point may equal 0");
    if (x == z) return 0;
    if (z / x > 1.0) ++negatives;
  }
  return negatives % 2 == 0 ? 1 : -1;
}

CriticalPointSet sample_weighted_level(std::span<const double> points, double level,
                                       std::uint64_t seed, double lo, double hi,
                                       const WeightDraw& draw) {
  Rng rng(seed);
  LevelSetQuery q{{points.begin(), points.end()}, level, {}};
  q.weights.resize(points.size());
  for (double& w : q.weights) w = draw ? draw(rng) : rng.exponential();
  return solve_level(q, lo, hi);
}

CriticalPointSet sample_weighted_level(std::span<const double> points, double level,
                                       std::uint64_t seed) {
  return sample_weighted_level(points, level, seed, -std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::infinity());
}

std::vector<std::complex<double>> drift_check(const SpectrumSample& s, double e,
                                              std::span<const std::complex<double>> zs,
                                              double radius) {
  const auto all = unfold_all(s, e);
  std::vector<std::complex<double>> out;
  out.reserve(zs.size());
  for (const auto& z : zs) out.push_back(w_eval(all, z) - w_eval(all, z, radius));
  return out;
}

double drift_level(double e) {
  if (!(std::abs(e) < 2.0)) throw InvalidArgument("energy must lie in (-2, 2)");
  return -std::numbers::pi * e / std::sqrt(4.0 - e * e);
}

double energy_for_level(double a) {
  const double mag = 2.0 * std::abs(a) / std::hypot(std::numbers::pi, a);
  return a > 0.0 ? -mag : mag;
}

std::size_t count_level_roots(std::size_t zeros_inside, double g_at_u, double g_at_v) {
  if (zeros_inside == 0) return (g_at_u < 0.0 && g_at_v > 0.0) ? 1 : 0;
  return zeros_inside - 1 + (g_at_u < 0.0 ? 1 : 0) + (g_at_v > 0.0 ? 1 : 0);
}

}  // namespace sinecrit
