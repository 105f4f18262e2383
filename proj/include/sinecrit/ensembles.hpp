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


#ifndef SINECRIT_ENSEMBLES_HPP
#define SINECRIT_ENSEMBLES_HPP

// GUE samplers (dense and tridiagonal), spectra of H/sqrt(N), principal
// submatrix spectra, and unfolding around a bulk energy.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sinecrit/linalg.hpp"

namespace sinecrit {

/// Dense Hermitian sample; `entries` is the full (not only lower) matrix.
struct HermitianDense {
  std::size_t n() const { return entries.rows(); }
  Matrix<std::complex<double>> entries;
  std::uint64_t seed = 0;
};

/// Tridiagonal model with the GUE eigenvalue law (Dumitriu--Edelman, beta=2).
struct HermiteTridiagonal {
  std::size_t n() const { return diag.size(); }
  std::vector<double> diag;
  std::vector<double> offdiag;  ///< strictly positive, length n-1
  std::uint64_t seed = 0;
};

enum class SpectrumSource { dense, tridiagonal, submatrix };

/// Ascending eigenvalues of H/sqrt(N).
struct SpectrumSample {
  std::size_t n = 0;
  std::vector<double> eigenvalues;
  std::uint64_t seed = 0;
  SpectrumSource source = SpectrumSource::tridiagonal;
};

enum class DensityModel { semicircle, unit, xi_local, xi_asymptotic };

/// Finite window of a rescaled point process, mean spacing 1.
struct PointConfiguration {
  double center = 0.0;      ///< E (matrices) or t (xi zeros)
  double half_width = 0.0;  ///< R, unfolded units
  std::vector<double> points;
  DensityModel density = DensityModel::unit;
};
using UnfoldedWindow = PointConfiguration;

/// Relative gap below which two eigenvalues count as a degenerate sample.
inline constexpr double kDegeneracyGap = 1e-14;

HermitianDense sample_gue_dense(std::size_t n, std::uint64_t seed);
HermiteTridiagonal sample_gue_tridiag(std::size_t n, std::uint64_t seed);

/// Throws DegenerateSpectrum on ties, NumericalError on QL non-convergence.
SpectrumSample spectrum(const HermitianDense& m);
SpectrumSample spectrum(const HermiteTridiagonal& m);

/// Eigenvalues of the top-left (N-1)x(N-1) block, divided by sqrt(N).
SpectrumSample principal_submatrix_spectrum(const HermitianDense& m);

enum class SamplerModel { tridiagonal, dense };

/// Spectrum of a fresh GUE_N sample; degenerate draws are redrawn from a
/// seed derived from (seed, attempt).
SpectrumSample sample_gue_spectrum(std::size_t n, std::uint64_t seed,
                                   SamplerModel model = SamplerModel::tridiagonal);

/// Semicircle density sqrt(4-E^2)/(2 pi) and its distribution function.
double semicircle_density(double e);
double semicircle_cdf(double x);

/// x_j = (lambda_j - E) N rho(E), restricted to [-R, R].
UnfoldedWindow unfold(const SpectrumSample& s, double e, double r);

/// All N points unfolded at E, with an optional shift subtracted.
std::vector<double> unfold_all(const SpectrumSample& s, double e, double shift = 0.0);

/// O(N) access to the spectrum of a tridiagonal sample without
/// diagonalizing it: Sturm counts, the logarithmic derivative of the
/// characteristic polynomial, and eigenvalues inside an interval. Works in
/// units of H/sqrt(N).
class TridiagonalProbe {
 public:
  explicit TridiagonalProbe(const HermiteTridiagonal& m);

  struct Reading {
    std::size_t below;     ///< eigenvalues < lambda
    double log_derivative; ///< sum_j 1/(lambda - lambda_j)
  };

  Reading read(double lambda) const;
  std::size_t count_below(double lambda) const;

  /// Eigenvalues in (lo, hi), ascending, by Sturm bisection and safeguarded
  /// Newton.
  std::vector<double> eigenvalues_in(double lo, double hi) const;

  std::size_t n() const { return diag_.size(); }

 private:
  std::vector<double> diag_;
  std::vector<double> off2_;
  double bound_;
};

/// A TridiagonalProbe seen in unfolded coordinates x = (lambda-E)N rho(E) - shift.
class UnfoldedProbe {
 public:
  UnfoldedProbe(const HermiteTridiagonal& m, double e, double shift = 0.0);

  double to_lambda(double x) const { return center_ + (x + shift_) / scale_; }

  struct Reading {
    std::size_t below;  ///< points < x
    double field;       ///< sum_j 1/(x_j - x), increasing between points
  };
  Reading read(double x) const;

  /// Points in the open interval (u, v).
  std::size_t count_in(double u, double v) const;
  std::vector<double> points_in(double u, double v) const;

  double scale() const { return scale_; }

 private:
  TridiagonalProbe probe_;
  double center_;
  double scale_;
  double shift_;
};

}  // namespace sinecrit

#endif  // SINECRIT_ENSEMBLES_HPP
