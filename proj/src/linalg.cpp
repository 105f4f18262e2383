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


#include "sinecrit/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "sinecrit/error.hpp"

namespace sinecrit {
namespace {

/// Implicit-shift QL on (d, e) in place, e[i] coupling i and i+1, e[n-1]
/// scratch. When `z` is non-null its columns are rotated along.
void ql_implicit(std::vector<double>& d, std::vector<double>& e,
                 Matrix<double>* z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e.resize(n);
  e[n - 1] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kQlMaxIterations)
          throw NumericalError("QL iteration did not converge for eigenvalue " +
                               std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool deflated = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (std::size_t k = 0; k < n; ++k) {
              f = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
              (*z)(k, i) = c * (*z)(k, i) - s * f;
            }
          }
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& t) {
  std::vector<double> d = t.diag;
  std::vector<double> e = t.off;
  ql_implicit(d, e, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

SymmetricEigen symmetric_eigen(const Matrix<double>& input) {
  const std::size_t n = input.rows();
  Matrix<double> a = input;
  std::vector<double> d(n, 0.0), e(n, 0.0);
  // Householder reduction with accumulated transformations (tred2).
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k < i; ++k) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (std::size_t k = 0; k < i; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
          a(j, i) = a(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (std::size_t k = j + 1; k < i; ++k) g += a(k, j) * a(i, k);
          e[j] = g / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j < i; ++j) {
          f = a(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (std::size_t k = 0; k <= j; ++k)
            a(j, k) -= f * e[k] + g * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
    d[i] = h;
  }
  if (n > 0) {
    d[0] = 0.0;
    e[0] = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] != 0.0) {
      for (std::size_t j = 0; j < i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < i; ++k) g += a(i, k) * a(k, j);
        for (std::size_t k = 0; k < i; ++k) a(k, j) -= g * a(k, i);
      }
    }
    d[i] = a(i, i);
    a(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) a(j, i) = a(i, j) = 0.0;
  }
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  ql_implicit(d, e, &a);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix<double>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = a(k, order[j]);
  }
  return out;
}

SymTridiagonal hermitian_tridiagonalize(Matrix<std::complex<double>> a) {
  using cd = std::complex<double>;
  const std::size_t n = a.rows();
  SymTridiagonal t;
  t.diag.resize(n);
  t.off.resize(n > 0 ? n - 1 : 0);
  std::vector<cd> v(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    // Column below the diagonal: a(k+1..n-1, k).
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(a(i, k));
    const double norm = std::sqrt(norm2);
    const cd x0 = a(k + 1, k);
    const double abs_x0 = std::abs(x0);
    if (norm == 0.0) {
      continue;
    }
    const cd phase = abs_x0 == 0.0 ? cd{1.0, 0.0} : x0 / abs_x0;
    const cd alpha = -phase * norm;
    // v = x - alpha e1, normalized.
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k + 1; i < n; ++i) v[i] *= inv;
    // w = A v on the trailing block, from the lower triangle.
    for (std::size_t i = k + 1; i < n; ++i) w[i] = cd{};
    // The complex products are spelled out so no NaN-recovery path is emitted.
    for (std::size_t i = k + 1; i < n; ++i) {
      const double vr = v[i].real(), vim = v[i].imag();
      const double d = a(i, i).real();
      double acc_r = d * vr, acc_i = d * vim;
      const cd* row = &a(i, 0);
      for (std::size_t j = k + 1; j < i; ++j) {
        const double ar = row[j].real(), ai = row[j].imag();
        const double xr = v[j].real(), xi = v[j].imag();
        acc_r += ar * xr - ai * xi;
        acc_i += ar * xi + ai * xr;
        w[j] += cd{ar * vr + ai * vim, ar * vim - ai * vr};
      }
      w[i] += cd{acc_r, acc_i};
    }
    cd beta{};
    for (std::size_t i = k + 1; i < n; ++i) beta += std::conj(v[i]) * w[i];
    const double b = beta.real();
    for (std::size_t i = k + 1; i < n; ++i) w[i] -= b * v[i];
    // A <- A - 2 (v w* + w v*) on the lower triangle.
    for (std::size_t i = k + 1; i < n; ++i) {
      const double pr = 2.0 * v[i].real(), pi = 2.0 * v[i].imag();
      const double qr = 2.0 * w[i].real(), qi = 2.0 * w[i].imag();
      cd* row = &a(i, 0);
      for (std::size_t j = k + 1; j <= i; ++j) {
        const double wr = w[j].real(), wim = w[j].imag();
        const double xr = v[j].real(), xi = v[j].imag();
        row[j] -= cd{pr * wr + pi * wim + qr * xr + qi * xi, pi * wr - pr * wim + qi * xr - qr * xi};
      }
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = cd{};
  }
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = a(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) t.off[i] = std::abs(a(i + 1, i));
  return t;
}

QuadratureRule gauss_legendre(std::size_t m, double lo, double hi) {
  QuadratureRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(m) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 1; j <= m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / static_cast<double>(j);
      }
      dp = static_cast<double>(m) * (x * p0 - p1) / (x * x - 1.0);
      const double step = p0 / dp;
      x -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[m - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[m - 1 - i] = half * w;
  }
  return rule;
}

}  // namespace sinecrit
