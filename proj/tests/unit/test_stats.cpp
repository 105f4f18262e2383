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
#include "sinecrit/critpoints.hpp"
#include "sinecrit/error.hpp"
#include "sinecrit/rng.hpp"
#include "sinecrit/sineproc.hpp"
#include "sinecrit/stats.hpp"

using namespace sinecrit;

namespace {

// True when `want` lies in the z = 4 Wilson interval of the estimate at bin i.
bool covers(const OmegaEstimate& e, std::size_t i, double want) {
  const auto [lo, hi] = wilson_interval(e.hits[i], e.trials, 4.0);
  return lo <= want && want <= hi;
}

}  // namespace

TEST_CASE("Wilson interval") {
  const auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo == doctest::Approx(0.403832).epsilon(1e-5));
  CHECK(hi == doctest::Approx(0.596168).epsilon(1e-5));
  const auto [z0, z1] = wilson_interval(0, 10);
  CHECK(z0 == 0.0);
  CHECK(z1 > 0.0);
  CHECK_THROWS_AS(wilson_interval(1, 0), InvalidArgument);
  CHECK_THROWS_AS(wilson_interval(3, 2), InvalidArgument);
}

TEST_CASE("omega on the Poisson reference") {
  const std::vector<double> eps{0.0, 0.1, 0.25};
  const auto e = omega_estimate(poisson_sampler(), 2, eps, 100000, 3, 4);
  CHECK(e.hits[0] == 0);
  CHECK(covers(e, 2, 1.0 - std::exp(-0.5) * 1.5));
  CHECK(covers(e, 1, 1.0 - std::exp(-0.2) * 1.2));
  const auto again = omega_estimate(poisson_sampler(), 2, eps, 100000, 3, 1);
  CHECK(again.hits == e.hits);
  CHECK_THROWS_AS(omega_estimate(poisson_sampler(), 2, eps, 0, 3), InvalidArgument);
  CHECK_THROWS_AS(omega_estimate(poisson_sampler(), 0, eps, 10, 3), InvalidArgument);
}

TEST_CASE("omega on the sine proxy") {
  // 1 - det(I - K) on (-0.05, 0.05) by Gauss-Legendre Nystrom: 0.0999727.
  const std::vector<double> eps{0.05};
  const auto e = omega_estimate(gue_probe_sampler(300, 0.0, {ProcessTag::eigenvalues}), 1, eps, 40000, 11, 8);
  CHECK(covers(e, 0, 0.09997272820174063));
  CHECK_THROWS_AS(omega_estimate(gue_probe_sampler(300, 0.0, {ProcessTag::eigenvalues}), 1,
                                 std::vector<double>{100.0}, 10, 1),
                  InvalidArgument);
}

TEST_CASE("omega monotonicity and the interlacing count identity") {
  const std::vector<double> eps{0.2, 0.4, 0.6, 0.8, 1.0};
  const auto h = count_histogram(gue_probe_sampler(300, 0.5, {ProcessTag::eigenvalues, ProcessTag::critical_points}),
                                 eps, 20000, 5, 8);
  for (std::size_t ch = 0; ch < 2; ++ch)
    for (std::size_t i = 0; i < eps.size(); ++i)
      for (std::uint32_t k = 1; k < 6; ++k) {
        CHECK(h.at_least(ch, i, k + 1) <= h.at_least(ch, i, k));
        if (i + 1 < eps.size()) CHECK(h.at_least(ch, i, k) <= h.at_least(ch, i + 1, k));
      }

  Rng rng(6);
  for (int rep = 0; rep < 2000; ++rep) {
    const auto w = poisson_window(20.0, rep);
    if (w.points.size() < 2) continue;
    const double a = 2.0 * rng.uniform() - 1.0;
    const LevelSetQuery q{w.points, a, {}};
    const auto c = solve_level(q).points;
    const double e = 3.0 * rng.uniform();
    long zin = 0, cin = 0;
    for (double x : w.points) zin += std::abs(x) < e;
    for (double x : c) cin += std::abs(x) < e;
    CHECK(std::abs(cin - zin) <= 1);
  }
}

TEST_CASE("exponent fit on a synthetic power law") {
  OmegaEstimate e;
  e.k = 2;
  e.trials = 1000000000000ULL;
  for (double x = 0.4; x < 1.05; x += 0.1) {
    e.eps.push_back(x);
    e.hits.push_back(static_cast<std::uint64_t>(std::llround(std::pow(x, 4) * e.trials)));
    const auto [lo, hi] = wilson_interval(e.hits.back(), e.trials);
    e.lo.push_back(lo);
    e.hi.push_back(hi);
  }
  const auto f = exponent_fit(e);
  CHECK(f.slope == doctest::Approx(4.0).epsilon(1e-4));
  // The eps = 1 bin has p = 1 and carries no slope information.
  CHECK(f.bins_used == 6);
  e.hits.assign(e.hits.size(), 10);
  CHECK_THROWS_AS(exponent_fit(e), NumericalError);
}

TEST_CASE("Theorem 1 events") {
  const double eps = 0.5;
  PointConfiguration w;
  w.half_width = 20.0;
  w.points = {-15.0, -9.0, -0.25, 0.0, 0.25, 8.0, 14.0};
  const auto r = theorem1_event_check(w, 0.0, 2, eps, 5.0);
  CHECK(r.omega_critical);
  CHECK(r.omega_enlarged);
  CHECK(r.critical_inside == 2);

  // A pair of zeros inside the interval and a lattice outside the enlarged one.
  PointConfiguration v;
  v.half_width = 40.0;
  std::vector<double> pts;
  for (double x = -39.5; x < 40.0; x += 1.0)
    if (std::abs(x) > 3.0) pts.push_back(x);
  pts.push_back(-0.3);
  pts.push_back(0.3);
  std::sort(pts.begin(), pts.end());
  v.points = pts;
  const LevelSetQuery q{pts, 0.0, {}};
  const auto crit = solve_level(q).points;
  const long inside = std::count_if(crit.begin(), crit.end(), [&](double z) { return std::abs(z) < eps; });
  const auto s = theorem1_event_check(v, 0.0, 2, eps, 5.0);
  CHECK(s.critical_inside == static_cast<std::size_t>(inside));
  CHECK(s.inclusion_holds());

  CHECK_THROWS_AS(theorem1_event_check(w, 0.0, 1, eps, 5.0), InvalidArgument);
  CHECK_THROWS_AS(theorem1_event_check(w, 0.0, 2, eps, 100.0), InvalidArgument);
  CHECK_THROWS_AS(theorem1_event_check(w, 0.0, 3, eps, 1.5), InvalidArgument);
}

TEST_CASE("Theorem 1 inclusion on random configurations") {
  auto draw = [](std::uint64_t seed) { return poisson_window(12.0, seed); };
  for (int k : {2, 3}) {
    const auto t = theorem1_configs(draw, 0.3, k, 0.5, 1.0 + 4.0 / (k - 1) + 1.0, 20000, 17, 8);
    CHECK(t.trials == 20000);
    CHECK(t.violations == 0);
  }
  const auto g = theorem1_gue(200, 0.0, 2, 0.5, 5.0, 5000, 3, 8);
  CHECK(g.violations == 0);
  CHECK(g.mismatches == 0);
  CHECK(g.omega_critical > 0);
}

TEST_CASE("form factor") {
  const std::vector<double> alpha{0.25, 0.5, 1.5};
  std::vector<PointConfiguration> poisson;
  for (int s = 0; s < 2000; ++s) poisson.push_back(poisson_window(10.0, s));
  const auto p = form_factor(poisson, alpha);
  for (std::size_t i = 0; i < alpha.size(); ++i) CHECK(std::abs(p.unweighted[i] - 1.0) < 4 * p.unweighted_se[i] + 1e-3);

  // Finite-window oracles at R = 10: 1 + integral of (1 - |d|/20)(1 - sinc^2 d) cos(2 pi a d).
  const auto sine = dpp_windows(10.0, 2000, 21, 8);
  const std::vector<double> grid{0.5, 1.5};
  const auto f = form_factor(sine, grid);
  CHECK(std::abs(f.unweighted[0] - 0.5027833849036143) < 0.05);
  CHECK(std::abs(f.unweighted[1] - 0.9985105971124399) < 0.05);
  CHECK(std::abs(f.imag_unweighted[0]) < 3 * f.unweighted_se[0] + 1e-12);

  std::vector<PointConfiguration> mirrored = sine;
  for (auto& c : mirrored) {
    for (double& x : c.points) x = -x;
    std::reverse(c.points.begin(), c.points.end());
  }
  const auto m = form_factor(mirrored, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(m.unweighted[i] == doctest::Approx(f.unweighted[i]).epsilon(1e-12));

  std::vector<PointConfiguration> few(sine.begin(), sine.begin() + 50);
  CHECK_THROWS_AS(form_factor(few, grid), InvalidArgument);
  CHECK(form_factor_weight(0.0) == 1.0);
  CHECK(form_factor_weight(2.0) == 0.5);
}

TEST_CASE("FGL curve") {
  CHECK(std::abs(fgl_curve(0.1) - 0.06401336896521502) < 1e-12);
  CHECK(std::abs(fgl_curve(1e-9)) < 1e-8);
  // fgl(a) - a changes sign once, at a0 = 0.7976924511956204 (mpmath root of the series).
  const double a0 = 0.7976924511956204;
  for (double a = 0.05; a < 1.0; a += 0.05) CHECK((fgl_curve(a) < a) == (a < a0));
  CHECK(fgl_curve(a0 - 1e-6) < a0 - 1e-6);
  CHECK(fgl_curve(a0 + 1e-6) > a0 + 1e-6);
  CHECK_THROWS_AS(fgl_curve(0.0), InvalidArgument);
  CHECK_THROWS_AS(fgl_curve(1.0), InvalidArgument);
}

TEST_CASE("second closest statistics") {
  SpectrumSample s;
  s.n = 3;
  s.eigenvalues = {-3, -1, 2};
  CHECK(second_closest_stat(s, 1.0).first == 2.0);
  s.eigenvalues = {-1, 0, 1};
  CHECK(second_closest_stat(s, 1.0).second == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));
  s.eigenvalues = {-1, 1};
  CHECK_THROWS_AS(second_closest_stat(s, 1.0), InvalidArgument);
  CHECK(default_second_closest_scale(50) == doctest::Approx(50 * std::numbers::pi));
}

TEST_CASE("tail bound") {
  TailBoundSpec t{1.0, 1.0, {0.0, 1.0, 10.0}};
  const auto b = tail_bound(t);
  CHECK(b[0] == 1.0);
  CHECK(b[1] == doctest::Approx(std::exp(-1.0 / (2.0 * std::numbers::e))).epsilon(1e-14));
  CHECK(b[1] == doctest::Approx(0.8320).epsilon(1e-4));
  CHECK(b[2] == doctest::Approx(std::exp(-(10.0 - std::numbers::e / 2.0))).epsilon(1e-13));
  t.sup_norm = 0.0;
  CHECK_THROWS_AS(tail_bound(t), InvalidArgument);
}

TEST_CASE("count variance") {
  const std::vector<double> r{1, 2, 4, 8};
  const auto pv = count_variance(poisson_sampler(), r, 40000, 9, 8);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(std::abs(pv[i] - r[i]) < 5 * r[i] * std::sqrt(2.0 / 40000) + 0.02 * r[i]);
  CHECK_THROWS_AS(count_variance(poisson_sampler(), r, 100, 9), InvalidArgument);

  const auto sv = count_variance(gue_probe_sampler(300, 0.0, {ProcessTag::eigenvalues}), std::vector<double>{2, 8},
                                 20000, 4, 8);
  const double c = sv[0] / std::log(std::exp(1.0) + 2.0);
  CHECK(sv[1] < 1.5 * c * std::log(std::exp(1.0) + 8.0));
}

TEST_CASE("distribution distances") {
  const std::vector<double> zeros{0, 0, 0};
  CHECK(ks_distance(zeros, cauchy_cdf) == doctest::Approx(0.5));
  Rng rng(12);
  std::vector<double> c(10000);
  for (double& x : c) x = std::tan(std::numbers::pi * (rng.uniform() - 0.5));
  CHECK(ks_distance(c, cauchy_cdf) < 0.02);
  CHECK(cauchy_cdf(0.0) == 0.5);
  CHECK(cauchy_cdf(1.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(ks_distance(std::vector<double>{}, cauchy_cdf), InvalidArgument);
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  CHECK(ks_two_sample(a, b) == 1.0);
  CHECK(ks_two_sample(a, a) == 0.0);
}
