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
#include <vector>

#include "doctest.h"
#include "sinecrit/critpoints.hpp"
#include "sinecrit/error.hpp"
#include "sinecrit/stats.hpp"

using namespace sinecrit;
using C = std::complex<double>;

namespace {

std::vector<double> random_points(Rng& rng, std::size_t n) {
  std::vector<double> x(n);
  double t = -0.5 * n;
  for (double& v : x) v = (t += 0.05 + rng.exponential());
  return x;
}

bool interlaces(const std::vector<double>& parent, const CriticalPointSet& c) {
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const auto k = c.gaps[i];
    if (!(c.points[i] > parent[k] && c.points[i] < parent[k + 1])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("critical points of small polynomials") {
  const std::vector<double> a{-1, 1}, b{0, 1}, c{0, 1, 3};
  CHECK(std::abs(critical_points(a).points.at(0)) < 1e-15);
  CHECK(critical_points(b).points.at(0) == doctest::Approx(0.5).epsilon(1e-14));
  const auto r = critical_points(c).points;
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(0.45141622964513645).epsilon(1e-13));
  CHECK(r[1] == doctest::Approx(2.2152504370215302).epsilon(1e-13));

  const std::vector<double> one{1.0}, bad{1.0, 0.0};
  CHECK_THROWS_AS(critical_points(one), InvalidArgument);
  CHECK_THROWS_AS(critical_points(bad), InvalidArgument);
}

TEST_CASE("field evaluation") {
  const std::vector<double> p{-1, 1};
  CHECK(std::abs(w_eval(p, 0.0)) < 1e-15);
  const C wi = w_eval(p, C(0, 1));
  CHECK(std::abs(wi - C(0, 1)) < 1e-15);
  const std::vector<double> two{2.0};
  CHECK(w_eval(two, 0.0).real() == 0.5);
  CHECK_THROWS_AS(w_eval(p, 1.0), PoleError);
  const std::vector<double> wide{-5, -1, 1, 5};
  CHECK(std::abs(w_eval(wide, C(0, 1), 2.0) - C(0, 1)) < 1e-15);
}

TEST_CASE("phi evaluation") {
  const std::vector<double> p{-1, 1};
  CHECK(phi_eval(p, 0.0) == C(1.0, 0.0));
  for (double z : {-3.0, -0.4, 0.2, 0.9, 2.5}) CHECK(phi_eval(p, z).real() == doctest::Approx(1 - z * z));
  CHECK(phi_eval(p, 1.0) == C(0.0, 0.0));
  CHECK(phi_sign(p, 2.0) == -1);
  CHECK(phi_sign(p, 0.5) == 1);
  const C zc(0.3, 0.7);
  CHECK(std::abs(phi_eval(p, zc) - (1.0 - zc * zc)) < 1e-14);
  const std::vector<double> zero{0.0, 1.0};
  CHECK_THROWS_AS(phi_eval(zero, 0.5), InvalidArgument);
}

TEST_CASE("log-derivative of phi equals minus the field") {
  Rng rng(8);
  const auto x = random_points(rng, 40);
  std::vector<double> pts;
  for (double v : x)
    if (v != 0.0) pts.push_back(v);
  // Fourth-order central difference of log|phi|.
  const double h = 1e-4;
  auto log_phi = [&](const std::vector<double>& p, double z) { return std::log(std::abs(phi_eval(p, z).real())); };
  auto diff = [&](const std::vector<double>& p, double z) {
    return (-log_phi(p, z + 2 * h) + 8 * log_phi(p, z + h) - 8 * log_phi(p, z - h) + log_phi(p, z - 2 * h)) / (12 * h);
  };
  for (int i = 0; i < 10; ++i) {
    double z;
    do {
      z = pts.front() + (pts.back() - pts.front()) * rng.uniform();
    } while (std::any_of(pts.begin(), pts.end(), [&](double v) { return std::abs(v - z) < 0.05; }));
    CHECK(std::abs(diff(pts, z) + w_eval(pts, z).real()) < 1e-8);
  }
  const std::vector<double> p{-1, 1};
  CHECK(std::abs(diff(p, 0.3) + w_eval(p, 0.3).real()) < 1e-8);
}

TEST_CASE("level sets") {
  const LevelSetQuery q0{{-1, 1}, 0.0, {}};
  CHECK(std::abs(solve_level(q0).points.at(0)) < 1e-14);
  const LevelSetQuery q1{{-1, 1}, 1.0, {}};
  CHECK(solve_level(q1).points.at(0) == doctest::Approx(-0.41421356237309515).epsilon(1e-13));
  const LevelSetQuery q10{{-1, 1}, 10.0, {}};
  CHECK(solve_level(q10).points.at(0) == doctest::Approx(-0.904987562112089).epsilon(1e-13));
  const LevelSetQuery qw{{-1, 1}, 0.0, {0.3, 1.7}};
  CHECK(solve_level(qw).points.at(0) == doctest::Approx((0.3 - 1.7) / 2.0).epsilon(1e-13));
  CHECK_THROWS_AS(solve_level(q0, 5.0, 6.0), InvalidArgument);
}

TEST_CASE("level-set roots: residual, interlacing and monotonicity") {
  Rng rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const auto x = random_points(rng, 60);
    std::vector<double> w(x.size());
    for (double& v : w) v = rng.exponential();
    const double a = 4.0 * rng.uniform() - 2.0;
    const LevelSetQuery q{x, a, w};
    const auto r = solve_level(q);
    REQUIRE(r.points.size() == x.size() - 1);
    CHECK(interlaces(x, r));
    for (double z : r.points) CHECK(std::abs(level_residual(q, z)) < 1e-10);
    const LevelSetQuery q2{x, a + 0.5, w};
    const auto r2 = solve_level(q2);
    for (std::size_t i = 0; i < r.points.size(); ++i) CHECK(r2.points[i] < r.points[i]);
  }
}

TEST_CASE("weighted roots reduce to unit weights and match the closed form") {
  const std::vector<double> p{-1, 1};
  const auto unit = sample_weighted_level(p, 0.7, 5, -2, 2, [](Rng&) { return 1.0; });
  const LevelSetQuery q{p, 0.7, {}};
  CHECK(unit.points == solve_level(q).points);
  Rng probe(5);
  const double w1 = probe.exponential(), w2 = probe.exponential();
  const auto r = sample_weighted_level(p, 0.0, 5);
  // w1/(-1 - z) + w2/(1 - z) = 0 gives z = (w1 - w2)/(w1 + w2).
  CHECK(r.points.at(0) == doctest::Approx((w1 - w2) / (w1 + w2)).epsilon(1e-12));
}

TEST_CASE("weighted roots match submatrix eigenvalues in law") {
  // Gap position of each point relative to the enclosing parent gap, pooled.
  std::vector<double> weighted, submatrix;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const auto parent = spectrum(sample_gue_dense(40, 3000000 + s)).eigenvalues;
    const auto roots = sample_weighted_level(parent, 0.0, derive_seed(1, s));
    for (std::size_t i = 0; i < roots.points.size(); ++i) {
      const auto k = roots.gaps[i];
      weighted.push_back((roots.points[i] - parent[k]) / (parent[k + 1] - parent[k]));
    }
    const auto m = sample_gue_dense(40, 7000000 + s);
    const auto ev = spectrum(m).eigenvalues;
    const auto sub = principal_submatrix_spectrum(m).eigenvalues;
    for (std::size_t i = 0; i < sub.size(); ++i) submatrix.push_back((sub[i] - ev[i]) / (ev[i + 1] - ev[i]));
  }
  CHECK(ks_two_sample(weighted, submatrix) < 0.05);
}

TEST_CASE("repeated differentiation interlaces at every stage") {
  Rng rng(2);
  const auto x = random_points(rng, 30);
  const auto stages = higher_critical_points(x, 5);
  REQUIRE(stages.size() == 5);
  const std::vector<double>* prev = &x;
  for (const auto& s : stages) {
    REQUIRE(s.size() == prev->size() - 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i] > (*prev)[i]);
      CHECK(s[i] < (*prev)[i + 1]);
    }
    prev = &s;
  }
}

TEST_CASE("root counting from boundary signs") {
  Rng rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    const auto x = random_points(rng, 30);
    const double a = 6.0 * rng.uniform() - 3.0;
    const LevelSetQuery q{x, a, {}};
    const auto roots = solve_level(q).points;
    double u = x[5] + (x[6] - x[5]) * rng.uniform();
    double v = u + 8.0 * rng.uniform();
    if (v >= x.back()) v = x.back() - 1e-3;
    if (!(v > u)) continue;
    std::size_t inside = 0, want = 0;
    for (double p : x) inside += (p > u && p < v);
    for (double p : roots) want += (p > u && p < v);
    // The closed-form field g(z) = sum 1/(x_j - z) + a increases between poles.
    CHECK(count_level_roots(inside, level_residual(q, u), level_residual(q, v)) == want);
  }
}

TEST_CASE("drift of the nonlocal field") {
  CHECK(drift_level(1.0) == doctest::Approx(-1.8137993642342178).epsilon(1e-14));
  CHECK(energy_for_level(drift_level(0.8)) == doctest::Approx(0.8).epsilon(1e-13));
  CHECK(energy_for_level(drift_level(-1.3)) == doctest::Approx(-1.3).epsilon(1e-13));
  CHECK_THROWS_AS(drift_level(2.0), InvalidArgument);

  // Ensemble means over 400 samples at N = 300, z = i, window 20. The E = 1 target is the
  // semicircle integral of 1/(x - i) over the complement of the window: -1.6515 + 0.0793i.
  const std::vector<C> zs{C(0, 1)};
  C m0 = 0, m1 = 0;
  const int trials = 400;
  for (int s = 0; s < trials; ++s) {
    const auto sp = sample_gue_spectrum(300, 123 + s);
    m0 += drift_check(sp, 0.0, zs, 20.0)[0];
    m1 += drift_check(sp, 1.0, zs, 20.0)[0];
  }
  m0 /= trials;
  m1 /= trials;
  CHECK(std::abs(m0.real()) < 0.1);
  CHECK(std::abs(m1.real() - (-1.6514656649445876)) < 0.1);
  CHECK(std::abs(m1.imag() - 0.0793) < 0.1);

  SpectrumSample s;
  s.n = 4;
  s.eigenvalues = {-1, -0.5, 0.5, 1};
  const std::vector<C> pole{C(unfold_all(s, 0.0)[2], 0)};
  CHECK_THROWS_AS(drift_check(s, 0.0, pole, 100.0), PoleError);
}
