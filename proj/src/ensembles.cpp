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


#include "sinecrit/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sinecrit/error.hpp"
#include "sinecrit/rng.hpp"

namespace sinecrit {
namespace {

void check_simple(const std::vector<double>& ev) {
  if (ev.empty()) return;
  for (double v : ev)
    if (!std::isfinite(v)) throw NumericalError("non-finite eigenvalue");
  const double radius = std::max(std::abs(ev.front()), std::abs(ev.back()));
  for (std::size_t i = 1; i < ev.size(); ++i) {
    if (ev[i] - ev[i - 1] <= kDegeneracyGap * radius)
      throw DegenerateSpectrum("eigenvalues " + std::to_string(i - 1) + " and " +
                               std::to_string(i) + " coincide");
  }
}

SpectrumSample finish(std::vector<double> ev, std::size_t n, std::uint64_t seed,
                      SpectrumSource source, double norm_dim) {
  const double inv = 1.0 / std::sqrt(norm_dim);
  for (double& v : ev) v *= inv;
  check_simple(ev);
  return SpectrumSample{n, std::move(ev), seed, source};
}

}  // namespace

HermitianDense sample_gue_dense(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("GUE dimension must be positive");
  Rng rng(seed);
  HermitianDense h{Matrix<std::complex<double>>(n, n), seed};
  const double s = std::sqrt(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    h.entries(i, i) = {rng.normal(), 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      const std::complex<double> z{s * rng.normal(), s * rng.normal()};
      h.entries(i, j) = z;
      h.entries(j, i) = std::conj(z);
    }
  }
  return h;
}

HermiteTridiagonal sample_gue_tridiag(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("GUE dimension must be positive");
  Rng rng(seed);
  HermiteTridiagonal t;
  t.seed = seed;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);
  for (auto& d : t.diag) d = rng.normal();
  const double s = std::sqrt(0.5);
  for (std::size_t k = 1; k < n; ++k)
    t.offdiag[k - 1] = s * rng.chi(2.0 * static_cast<double>(n - k));
  return t;
}

SpectrumSample spectrum(const HermitianDense& m) {
  const auto t = hermitian_tridiagonalize(m.entries);
  return finish(tridiagonal_eigenvalues(t), m.n(), m.seed, SpectrumSource::dense,
                static_cast<double>(m.n()));
}

SpectrumSample spectrum(const HermiteTridiagonal& m) {
  SymTridiagonal t{m.diag, m.offdiag};
  return finish(tridiagonal_eigenvalues(t), m.n(), m.seed,
                SpectrumSource::tridiagonal, static_cast<double>(m.n()));
}

SpectrumSample principal_submatrix_spectrum(const HermitianDense& m) {
  const std::size_t n = m.n();
  if (n < 2) throw InvalidArgument("principal submatrix needs N >= 2");
  Matrix<std::complex<double>> sub(n - 1, n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) sub(i, j) = m.entries(i, j);
  const auto t = hermitian_tridiagonalize(std::move(sub));
  auto s = finish(tridiagonal_eigenvalues(t), n - 1, m.seed,
                  SpectrumSource::submatrix, static_cast<double>(n));
  return s;
}

SpectrumSample sample_gue_spectrum(std::size_t n, std::uint64_t seed,
                                   SamplerModel model) {
  constexpr int kMaxRedraws = 16;
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : derive_seed(seed, attempt);
    try {
      if (model == SamplerModel::dense) return spectrum(sample_gue_dense(n, s));
      return spectrum(sample_gue_tridiag(n, s));
    } catch (const DegenerateSpectrum&) {
    }
  }
  throw DegenerateSpectrum("degenerate spectrum after repeated redraws");
}

double semicircle_density(double e) {
  if (std::abs(e) >= 2.0) return 0.0;
  return std::sqrt(4.0 - e * e) / (2.0 * std::numbers::pi);
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + (x * std::sqrt(4.0 - x * x) / 4.0 + std::asin(x / 2.0)) /
                   std::numbers::pi;
}

std::vector<double> unfold_all(const SpectrumSample& s, double e, double shift) {
  if (!(std::abs(e) < 2.0))
    throw InvalidArgument("unfolding energy must lie in (-2, 2)");
  const double scale = static_cast<double>(s.n) * semicircle_density(e);
  std::vector<double> x(s.eigenvalues.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = (s.eigenvalues[i] - e) * scale - shift;
  return x;
}

UnfoldedWindow unfold(const SpectrumSample& s, double e, double r) {
  if (!(r > 0.0)) throw InvalidArgument("window half-width must be positive");
  UnfoldedWindow w;
  w.center = e;
  w.half_width = r;
  w.density = DensityModel::semicircle;
  for (double x : unfold_all(s, e))
    if (std::abs(x) <= r) w.points.push_back(x);
  return w;
}

TridiagonalProbe::TridiagonalProbe(const HermiteTridiagonal& m)
    : diag_(m.diag), off2_(m.offdiag) {
  const double inv = 1.0 / std::sqrt(static_cast<double>(m.n()));
  for (double& d : diag_) d *= inv;
  for (double& e : off2_) e = (e * inv) * (e * inv);
  bound_ = 0.0;
  for (std::size_t i = 0; i < diag_.size(); ++i) {
    double r = std::abs(diag_[i]);
    if (i > 0) r += std::sqrt(off2_[i - 1]);
    if (i < off2_.size()) r += std::sqrt(off2_[i]);
    bound_ = std::max(bound_, r);
  }
}

TridiagonalProbe::Reading TridiagonalProbe::read(double lambda) const {
  const double pivmin = std::numeric_limits<double>::epsilon() * (bound_ + std::abs(lambda));
  double q = diag_[0] - lambda;
  if (q == 0.0) q = -pivmin;
  std::size_t below = q < 0.0 ? 1 : 0;
  double r2 = 0.0;
  double r1 = -1.0 / q;
  for (std::size_t k = 1; k < diag_.size(); ++k) {
    const double ratio = off2_[k - 1] / q;
    const double a = diag_[k] - lambda;
    double qk = a - ratio;
    if (qk == 0.0) qk = -pivmin;
    const double rk = (-1.0 + a * r1 - ratio * r2) / qk;
    below += qk < 0.0 ? 1 : 0;
    q = qk;
    r2 = r1;
    r1 = rk;
  }
  return {below, r1};
}

std::size_t TridiagonalProbe::count_below(double lambda) const {
  const double pivmin = std::numeric_limits<double>::epsilon() * (bound_ + std::abs(lambda));
  double q = diag_[0] - lambda;
  if (q == 0.0) q = -pivmin;
  std::size_t below = q < 0.0 ? 1 : 0;
  for (std::size_t k = 1; k < diag_.size(); ++k) {
    q = (diag_[k] - lambda) - off2_[k - 1] / q;
    if (q == 0.0) q = -pivmin;
    below += q < 0.0 ? 1 : 0;
  }
  return below;
}

std::vector<double> TridiagonalProbe::eigenvalues_in(double lo, double hi) const {
  std::vector<double> out;
  if (!(lo < hi)) return out;
  lo = std::max(lo, -bound_ - 1.0);
  hi = std::min(hi, bound_ + 1.0);
  if (!(lo < hi)) return out;
  const std::size_t first = count_below(lo);
  const std::size_t last = count_below(hi);
  for (std::size_t j = first; j < last; ++j) {
    double a = out.empty() ? lo : out.back();
    double b = hi;
    // Isolate lambda_j: count_below(a) <= j < count_below(b) == j+1.
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (count_below(b) == j + 1 || !(a < mid && mid < b)) break;
      if (count_below(mid) <= j)
        a = mid;
      else
        b = mid;
    }
    double x = 0.5 * (a + b);
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(x));
    for (int it = 0; it < 100 && b - a > tol; ++it) {
      const Reading rd = read(x);
      if (rd.below <= j)
        a = x;
      else
        b = x;
      double next = x - 1.0 / rd.log_derivative;
      if (!(next > a && next < b) || !std::isfinite(next)) next = 0.5 * (a + b);
      if (std::abs(next - x) <= tol) {
        x = next;
        break;
      }
      x = next;
    }
    out.push_back(x);
  }
  return out;
}

UnfoldedProbe::UnfoldedProbe(const HermiteTridiagonal& m, double e, double shift)
    : probe_(m), center_(e), shift_(shift) {
  if (!(std::abs(e) < 2.0))
    throw InvalidArgument("unfolding energy must lie in (-2, 2)");
  scale_ = static_cast<double>(m.n()) * semicircle_density(e);
}

UnfoldedProbe::Reading UnfoldedProbe::read(double x) const {
  const auto rd = probe_.read(to_lambda(x));
  // sum 1/(x_j - x) = (1/scale) sum 1/(lambda_j - lambda) = -(1/scale) r.
  return {rd.below, -rd.log_derivative / scale_};
}

std::size_t UnfoldedProbe::count_in(double u, double v) const {
  if (!(u < v)) return 0;
  return probe_.count_below(to_lambda(v)) - probe_.count_below(to_lambda(u));
}

std::vector<double> UnfoldedProbe::points_in(double u, double v) const {
  auto lam = probe_.eigenvalues_in(to_lambda(u), to_lambda(v));
  for (double& l : lam) l = (l - center_) * scale_ - shift_;
  return lam;
}

}  // namespace sinecrit
