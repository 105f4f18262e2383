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


#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "sinecrit/linalg.hpp"
#include "sinecrit/rng.hpp"

using namespace sinecrit;

TEST_CASE("discrete Laplacian spectrum") {
  for (std::size_t n : {1u, 2u, 7u, 64u, 300u}) {
    SymTridiagonal t{std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
    const auto ev = tridiagonal_eigenvalues(t);
    REQUIRE(ev.size() == n);
    for (std::size_t k = 1; k <= n; ++k) {
      const double want = 2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1.0));
      CHECK(std::abs(ev[k - 1] - want) < 1e-10);
    }
  }
}

TEST_CASE("symmetric eigen decomposition reconstructs the matrix") {
  Rng rng(5);
  const std::size_t n = 25;
  Matrix<double> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.normal();
  const auto e = symmetric_eigen(a);
  REQUIRE(std::is_sorted(e.values.begin(), e.values.end()));
  double err = 0, orth = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0, g = 0;
      for (std::size_t k = 0; k < n; ++k) {
        s += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
        g += e.vectors(k, i) * e.vectors(k, j);
      }
      err = std::max(err, std::abs(s - a(i, j)));
      orth = std::max(orth, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  CHECK(err < 1e-10);
  CHECK(orth < 1e-10);
}

TEST_CASE("Householder reduction preserves the spectrum") {
  // A 3x3 Hermitian matrix with eigenvalues 1, 2, 4: U diag U* for a fixed unitary U.
  using C = std::complex<double>;
  Matrix<C> a(3, 3);
  a(0, 0) = 2.0; a(1, 1) = 2.5; a(2, 2) = 2.5;
  a(0, 1) = C(0, 0); a(1, 0) = C(0, 0);
  a(1, 2) = C(0, -1.5); a(2, 1) = C(0, 1.5);
  a(0, 2) = 0; a(2, 0) = 0;
  // Block diag(2, [[2.5, -1.5i], [1.5i, 2.5]]) has eigenvalues 2, 1, 4.
  const auto ev = tridiagonal_eigenvalues(hermitian_tridiagonalize(a));
  REQUIRE(ev.size() == 3);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(ev[2] == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("Gauss-Legendre nodes and exactness") {
  const auto q = gauss_legendre(5, -1.0, 1.0);
  CHECK(q.nodes[0] == doctest::Approx(-0.906179845938664).epsilon(1e-14));
  CHECK(q.weights[0] == doctest::Approx(0.236926885056189).epsilon(1e-14));
  CHECK(q.weights[2] == doctest::Approx(128.0 / 225.0).epsilon(1e-14));
  const auto r = gauss_legendre(8, 0.0, 3.0);
  double s = 0;
  for (std::size_t i = 0; i < 8; ++i) s += r.weights[i] * std::pow(r.nodes[i], 15);
  CHECK(s == doctest::Approx(std::pow(3.0, 16) / 16.0).epsilon(1e-12));
}

TEST_CASE("compensated summation recovers cancelled terms") {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1000.0);
}
