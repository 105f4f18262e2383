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


#ifndef SINECRIT_CRITPOINTS_HPP
#define SINECRIT_CRITPOINTS_HPP

// Critical points of real-rooted polynomials and the level sets of the
// Cauchy field W(z) = sum_x w_x / (x - z) on a finite configuration.

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "sinecrit/ensembles.hpp"
#include "sinecrit/rng.hpp"

namespace sinecrit {

inline constexpr double kNoTruncation = std::numeric_limits<double>::infinity();

/// Level-set problem sum_j w_j/(x_j - z) = -level, one root per gap.
struct LevelSetQuery {
  std::vector<double> points;   ///< strictly ascending
  double level = 0.0;           ///< a
  std::vector<double> weights;  ///< empty means all ones
};

struct CriticalPointSet {
  std::vector<double> points;  ///< ascending, one per solved gap
  std::vector<std::size_t> gaps;  ///< gap index k: points[i] in (x_k, x_{k+1})
  double level = 0.0;
};

/// Roots of sum_j 1/(x - x_j) = 0, one strictly inside every gap.
CriticalPointSet critical_points(std::span<const double> zeros);

/// Repeated differentiation: the k-th stage interlaces stage k-1.
std::vector<std::vector<double>> higher_critical_points(std::span<const double> zeros,
                                                        int order);

/// sum over |x| <= radius of 1/(x - z), compensated.
std::complex<double> w_eval(std::span<const double> points, std::complex<double> z,
                            double radius = kNoTruncation);

/// prod over |x| <= radius of (1 - z/x).
std::complex<double> phi_eval(std::span<const double> points, std::complex<double> z,
                              double radius = kNoTruncation);

/// Sign of phi_eval at real z: (-1)^#{included x : z/x > 1}, or 0 at a point.
int phi_sign(std::span<const double> points, double z, double radius = kNoTruncation);

/// Solves every gap (x_k, x_{k+1}) that meets [lo, hi].
CriticalPointSet solve_level(const LevelSetQuery& q, double lo, double hi);
CriticalPointSet solve_level(const LevelSetQuery& q);

/// Value of sum_j w_j/(x_j - z) + level.
double level_residual(const LevelSetQuery& q, double z);

using WeightDraw = std::function<double(Rng&)>;

/// Exponential(1) weights |g_x|^2 then solve_level over [lo, hi].
CriticalPointSet sample_weighted_level(std::span<const double> points, double level,
                                       std::uint64_t seed, double lo, double hi,
                                       const WeightDraw& draw = {});
CriticalPointSet sample_weighted_level(std::span<const double> points, double level,
                                       std::uint64_t seed);

/// W_N(z; E) over the full spectrum minus the window part |x| <= radius.
std::vector<std::complex<double>> drift_check(const SpectrumSample& s, double e,
                                              std::span<const std::complex<double>> zs,
                                              double radius);

/// Drift constant -pi E / sqrt(4 - E^2) linking matrices to the level a.
double drift_level(double e);
/// Inverse of drift_level.
double energy_for_level(double a);

/// Number of level roots in (u, v) from the number of zeros inside and the
/// increasing gap map g = field + level evaluated at u and v.
std::size_t count_level_roots(std::size_t zeros_inside, double g_at_u, double g_at_v);

}  // namespace sinecrit

#endif  // SINECRIT_CRITPOINTS_HPP
