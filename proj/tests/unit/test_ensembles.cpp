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
#include <numbers>
#include <vector>

#include "doctest.h"
#include "sinecrit/ensembles.hpp"
#include "sinecrit/error.hpp"
#include "sinecrit/stats.hpp"

using namespace sinecrit;

TEST_CASE("dense samples are Hermitian and deterministic") {
  const auto a = sample_gue_dense(6, 11);
  const auto b = sample_gue_dense(6, 11);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.entries(i, i).imag() == 0.0);
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(a.entries(i, j) == std::conj(a.entries(j, i)));
      CHECK(a.entries(i, j) == b.entries(i, j));
    }
  }
  const auto one = sample_gue_dense(1, 3);
  CHECK(one.n() == 1);
  CHECK(spectrum(one).eigenvalues[0] == one.entries(0, 0).real());
}

TEST_CASE("expected trace of H squared is N squared") {
  // Var(tr H^2) = 2N + 2 N(N-1) = 128 at N = 8, so the SE of the mean is 0.113.
  const int trials = 10000;
  double dense = 0, tri = 0;
  for (int s = 0; s < trials; ++s) {
    const auto d = sample_gue_dense(8, 1000 + s);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) dense += std::norm(d.entries(i, j));
    const auto t = sample_gue_tridiag(8, 5000000 + s);
    for (double x : t.diag) tri += x * x;
    for (double x : t.offdiag) tri += 2 * x * x;
  }
  CHECK(std::abs(dense / trials - 64.0) < 0.6);
  CHECK(std::abs(tri / trials - 64.0) < 0.6);
}

TEST_CASE("tridiagonal model shape") {
  const auto t = sample_gue_tridiag(1, 4);
  CHECK(t.diag.size() == 1);
  CHECK(t.offdiag.empty());
  const auto u = sample_gue_tridiag(30, 4);
  CHECK(u.offdiag.size() == 29);
  CHECK(std::all_of(u.offdiag.begin(), u.offdiag.end(), [](double x) { return x > 0; }));
  CHECK(spectrum(t).eigenvalues[0] == t.diag[0]);
}

TEST_CASE("dense and tridiagonal spectra agree in law") {
  std::vector<double> a, b;
  for (int s = 0; s < 10000; ++s) {
    for (double x : spectrum(sample_gue_dense(6, 77 + s)).eigenvalues) a.push_back(x);
    for (double x : spectrum(sample_gue_tridiag(6, 900000 + s)).eigenvalues) b.push_back(x);
  }
  CHECK(ks_two_sample(a, b) < 0.02);
}

TEST_CASE("closed-form spectra") {
  HermitianDense m;
  m.entries = Matrix<std::complex<double>>(2, 2);
  m.entries(0, 1) = m.entries(1, 0) = 1.0;
  const auto s = spectrum(m);
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  HermitianDense d;
  d.entries = Matrix<std::complex<double>>(2, 2);
  d.entries(0, 0) = 1.0;
  d.entries(1, 1) = 2.0;
  const auto sub = principal_submatrix_spectrum(d);
  REQUIRE(sub.eigenvalues.size() == 1);
  CHECK(sub.eigenvalues[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sub.source == SpectrumSource::submatrix);

  CHECK_THROWS_AS(principal_submatrix_spectrum(sample_gue_dense(1, 0)), InvalidArgument);
}

TEST_CASE("submatrix eigenvalues interlace") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto m = sample_gue_dense(40, seed);
    const auto p = spectrum(m).eigenvalues;
    const auto q = principal_submatrix_spectrum(m).eigenvalues;
    REQUIRE(q.size() == 39);
    for (std::size_t i = 0; i < q.size(); ++i) {
      CHECK(q[i] > p[i] - 1e-12);
      CHECK(q[i] < p[i + 1] + 1e-12);
    }
  }
}

TEST_CASE("semicircle law at N = 200") {
  std::vector<double> pooled;
  for (int s = 0; s < 100; ++s)
    for (double x : sample_gue_spectrum(200, 31 + s).eigenvalues) pooled.push_back(x);
  CHECK(ks_distance(pooled, semicircle_cdf) < 0.05);
  CHECK(semicircle_density(0.0) == doctest::Approx(1.0 / std::numbers::pi));
  CHECK(semicircle_cdf(0.0) == doctest::Approx(0.5));
  CHECK(semicircle_cdf(2.5) == 1.0);
}

TEST_CASE("determinism of spectra") {
  CHECK(sample_gue_spectrum(100, 9).eigenvalues == sample_gue_spectrum(100, 9).eigenvalues);
  CHECK(sample_gue_spectrum(30, 9, SamplerModel::dense).eigenvalues ==
        sample_gue_spectrum(30, 9, SamplerModel::dense).eigenvalues);
}

TEST_CASE("unfolding") {
  SpectrumSample s;
  s.n = 100;
  s.eigenvalues = {-0.5, 0.0, 0.01, 0.9};
  const auto w = unfold(s, 0.0, 1.0);
  REQUIRE(w.points.size() == 2);
  CHECK(w.points[0] == 0.0);
  CHECK(w.points[1] == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
  CHECK(w.half_width == 1.0);
  CHECK_THROWS_AS(unfold(s, 2.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(unfold(s, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("probes agree with the full spectrum") {
  const auto t = sample_gue_tridiag(300, 17);
  const auto ev = spectrum(t).eigenvalues;
  const TridiagonalProbe probe(t);
  for (double lam : {-1.5, -0.3, 0.0, 0.77, 1.9}) {
    const auto r = probe.read(lam);
    const auto below = std::lower_bound(ev.begin(), ev.end(), lam) - ev.begin();
    CHECK(r.below == static_cast<std::size_t>(below));
  }
  const UnfoldedProbe up(t, 0.5, 0.25);
  const auto all = unfold_all(spectrum(t), 0.5, 0.25);
  const auto inside = up.points_in(-3.0, 3.0);
  std::vector<double> want;
  for (double x : all)
    if (x > -3.0 && x < 3.0) want.push_back(x);
  REQUIRE(inside.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(inside[i] == doctest::Approx(want[i]).epsilon(1e-9));
  double field = 0;
  for (double x : all) field += 1.0 / (x - 0.1234);
  CHECK(up.read(0.1234).field == doctest::Approx(field).epsilon(1e-9));
}
