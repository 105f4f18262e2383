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


#ifndef SINECRIT_ZETAXI_HPP
#define SINECRIT_ZETAXI_HPP

// Gamma, zeta and the Riemann xi-function at desk heights; zeros and
// critical points of Xi(t) = xi(1/2 + it); zero-table I/O; the rescaled
// logarithmic derivative W_{t,T}.

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "sinecrit/critpoints.hpp"

namespace sinecrit {

/// Largest |Im s| supported by the Euler--Maclaurin evaluator.
inline constexpr double kMaxHeight = 1e5;

struct ZetaEvalParams {
  double cutoff_extra = 32.0;  ///< sum length ceil(|Im s|/2) + cutoff_extra
  int bernoulli_terms = 12;    ///< in [2, 30]
  double precision = 1e-12;    ///< relative; stops the correction series early
};

/// Lanczos (g = 7, 15 coefficients) with reflection for Re s < 1/2.
std::complex<double> gamma_complex(std::complex<double> s);
/// log Gamma, continuous in Im s for Re s >= 1/2.
std::complex<double> log_gamma_complex(std::complex<double> s);

std::complex<double> zeta_em(std::complex<double> s, const ZetaEvalParams& p = {});

std::complex<double> xi(std::complex<double> s);
/// Real part of xi(1/2 + it); throws NumericalError if the imaginary part
/// is not negligible. Underflows to 0 above t ~ 900: use xi_normalized.
double Xi(double t);

/// Riemann--Siegel theta, Im log Gamma(1/4 + it/2) - (t/2) log pi.
double riemann_siegel_theta(double t);
/// Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + it).
double hardy_z(double t);
/// log M(t) with Xi(t) = M(t) * xi_normalized(t), M > 0.
double xi_log_scale(double t);
/// Xi(t) / M(t) = -Z(t): same sign and zeros as Xi at every height.
double xi_normalized(double t);
/// Xi'(t) / M(t) from central differences at steps h and 2h, combined
/// to cancel the O(h^2) error.
double xi_slope_normalized(double t, double h);

/// Riemann--von Mangoldt main term (T/2pi) log(T/2pi) - T/2pi + 7/8,
/// clamped at 0.
double riemann_von_mangoldt(double t);
/// Mean zero spacing 2 pi / log(t / 2 pi) used by the scanner.
double mean_zero_spacing(double t);

struct ZeroTable {
  std::vector<double> ordinates;  ///< ascending, positive
  std::string source;             ///< "computed" or a file path
  double t_min = 0.0;
  double t_max = 0.0;
};

/// Every zero ordinate in [t_min, t_max]. Throws NumericalError when the
/// count misses the Riemann--von Mangoldt term by more than 2.
ZeroTable find_zeros(double t_min, double t_max, unsigned workers = 1);

/// One critical ordinate of Xi strictly inside each gap of the table.
std::vector<double> find_critical_points(const ZeroTable& z, unsigned workers = 1);

/// Text format: one decimal ordinate per line, ascending, '#' comments.
/// "# range <t_min> <t_max>" comments set the covered height range.
ZeroTable load_zero_table(const std::filesystem::path& path);
void save_zero_table(const ZeroTable& z, const std::filesystem::path& path);

enum class UnfoldingScale {
  asymptotic,  ///< log T / (2 pi)
  local,       ///< log(t / 2 pi) / (2 pi)
};

double unfolding_density(double t, double big_t, UnfoldingScale scale);

/// Integral of 1/(x - z) dx over |x| > radius (principal value at infinity):
/// the unit-density contribution of the points a window truncates away.
std::complex<double> unit_density_tail(double radius, std::complex<double> z);

/// sum over rescaled zeros |x| <= radius of 1/(x - z), x = (gamma - t) L.
/// The radius is clipped symmetrically to the table's covered range. With
/// `tail` set, unit_density_tail at the clipped radius is added.
std::complex<double> w_tT(const ZeroTable& z, double t, double big_t, std::complex<double> zpt,
                          double radius, UnfoldingScale scale = UnfoldingScale::asymptotic,
                          bool tail = false);

struct XiWindow {
  double center = 0.0;
  double scale = 0.0;             ///< local density log(t/2pi)/(2pi)
  double asymptotic_scale = 0.0;  ///< log t / (2pi)
  std::vector<double> points;
};

XiWindow unfold_zeros(const ZeroTable& z, double t, double radius = kNoTruncation);

/// Consecutive spacings in [lo, hi], each unfolded at its midpoint.
std::vector<double> unfolded_spacings(std::span<const double> ordinates, double lo, double hi);

}  // namespace sinecrit

#endif  // SINECRIT_ZETAXI_HPP
