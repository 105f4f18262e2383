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


#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "sinecrit/critpoints.hpp"
#include "sinecrit/error.hpp"
#include "sinecrit/rng.hpp"
#include "sinecrit/zetaxi.hpp"

using namespace sinecrit;
using C = std::complex<double>;
namespace fs = std::filesystem;

namespace {

double rel(C got, C want) { return std::abs(got - want) / std::abs(want); }

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path dir = SINECRIT_TEST_TMP;
  fs::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p) << body;
  return p;
}

// Golden-section maximum of log|Xi| = log M + log|Z| on (a, b).
double golden_max_abs_xi(double a, double b) {
  const auto f = [](double t) { return xi_log_scale(t) + std::log(std::abs(hardy_z(t))); };
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  while (b - a > 1e-10) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("gamma function") {
  CHECK(rel(gamma_complex(0.5), std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(rel(gamma_complex(5.0), 24.0) < 1e-14);
  CHECK(rel(gamma_complex(C(1, 1)), C(0.498015668118356, -0.154949828301811)) < 1e-13);
  CHECK(rel(gamma_complex(C(0.25, 50)), C(5.62584225920491407e-35, 4.69448911534081404e-35)) < 1e-13);
  CHECK(rel(gamma_complex(C(-3.3, 2.2)), C(-0.00110720845685425754, -0.000664672223610394168)) < 1e-13);
  CHECK(rel(gamma_complex(C(0.5, 120)), C(-1.76611742958950734e-82, 2.95156212485745530e-82)) < 1e-13);
  CHECK_THROWS_AS(gamma_complex(0.0), PoleError);
  CHECK_THROWS_AS(gamma_complex(-3.0), PoleError);
}

TEST_CASE("zeta by Euler-Maclaurin") {
  CHECK(rel(zeta_em(2.0), std::numbers::pi * std::numbers::pi / 6.0) < 1e-14);
  CHECK(rel(zeta_em(0.0), -0.5) < 1e-14);
  CHECK(rel(zeta_em(-1.0), -1.0 / 12.0) < 1e-13);
  CHECK(std::abs(zeta_em(C(0.5, 14.1347251417))) < 1e-8);
  CHECK(std::abs(zeta_em(C(0.5, 1000)) - C(0.356334367194396055, 0.931997831232993665)) < 1e-11);
  CHECK(rel(zeta_em(C(-5.5, 30)), C(-12029.0552232261073, -2432.03128952730226)) < 1e-12);
  CHECK_THROWS_AS(zeta_em(1.0), PoleError);
  CHECK_THROWS_AS(zeta_em(C(0.5, 2e5)), InvalidArgument);
  ZetaEvalParams p;
  p.bernoulli_terms = 1;
  CHECK_THROWS_AS(zeta_em(2.0, p), InvalidArgument);
}

TEST_CASE("Xi function") {
  CHECK(Xi(0.0) == doctest::Approx(0.497120778188314).epsilon(1e-13));
  CHECK(Xi(5.0) == doctest::Approx(0.275549997344204192).epsilon(1e-12));
  CHECK(Xi(20.0) == doctest::Approx(-0.0000366554277556094568).epsilon(1e-11));
  for (double t : {1.0, 5.0, 20.0}) CHECK(std::abs(Xi(t) - Xi(-t)) <= 1e-10 * std::abs(Xi(t)));
  CHECK((Xi(14.0) > 0) != (Xi(14.2) > 0));
  CHECK(std::abs(xi(C(0.5, 5.0)) - Xi(5.0)) < 1e-14);
  CHECK(riemann_siegel_theta(100.0) == doctest::Approx(87.97216523178722).epsilon(1e-14));
  CHECK(hardy_z(100.0) == doctest::Approx(2.69269705666446347).epsilon(1e-11));
  CHECK(hardy_z(5000.5) == doctest::Approx(0.585425319246438950).epsilon(1e-10));
  CHECK(xi_normalized(5000.5) == -hardy_z(5000.5));
}

TEST_CASE("Xi stays real on the supported range") {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double t = 1e4 * rng.uniform();
    CHECK_NOTHROW(Xi(t));
  }
}

TEST_CASE("zero scan") {
  const auto z = find_zeros(10.0, 30.0);
  REQUIRE(z.ordinates.size() == 3);
  CHECK(std::abs(z.ordinates[0] - 14.134725141734694) < 1e-6);
  CHECK(std::abs(z.ordinates[1] - 21.022039638771555) < 1e-6);
  CHECK(std::abs(z.ordinates[2] - 25.010857580145689) < 1e-6);
  CHECK(find_zeros(10.0, 100.0).ordinates.size() == 29);
  const auto mid = find_zeros(1000.0, 1500.0, 4);
  CHECK(mid.ordinates.size() == 420);
  CHECK(std::abs(mid.ordinates.front() - 1001.3494826) < 1e-6);
  CHECK_THROWS_AS(find_zeros(30.0, 30.0), InvalidArgument);
  CHECK(riemann_von_mangoldt(100.0) == doctest::Approx(29.0).epsilon(0.05));
  CHECK(riemann_von_mangoldt(1.0) == doctest::Approx(0.4233384).epsilon(1e-6));
  CHECK(riemann_von_mangoldt(2 * std::numbers::pi) == 0.0);
}

TEST_CASE("critical ordinates of Xi") {
  const auto z = find_zeros(10.0, 800.0, 4);
  const auto c = find_critical_points(z, 4);
  REQUIRE(c.size() == z.ordinates.size() - 1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(c[i] > z.ordinates[i]);
    CHECK(c[i] < z.ordinates[i + 1]);
  }
  CHECK(std::abs(c[0] - 15.58570858982934) < 1e-6);
  CHECK(std::abs(c[1] - 22.0979772804009) < 1e-6);
  CHECK(std::abs(c[0] - golden_max_abs_xi(z.ordinates[0], z.ordinates[1])) < 1e-6);
  const std::size_t k = c.size() - 1;
  CHECK(std::abs(c[k] - golden_max_abs_xi(z.ordinates[k], z.ordinates[k + 1])) < 1e-6);

  ZeroTable single{{14.134725141734694}, "test", 10, 20};
  CHECK_THROWS_AS(find_critical_points(single), InvalidArgument);
}

TEST_CASE("zero table files") {
  const auto t = load_zero_table(write_file("two.txt", "14.134725141\n21.022039639\n"));
  REQUIRE(t.ordinates.size() == 2);
  CHECK(t.ordinates[1] == 21.022039639);
  const auto c = load_zero_table(write_file("comments.txt", "# header\n14.1\n\n  # more\n21.0\n"));
  CHECK(c.ordinates.size() == 2);
  try {
    load_zero_table(write_file("desc.txt", "21.0\n14.1\n"));
    FAIL("descending table accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS(load_zero_table(write_file("junk.txt", "14.1\nabc\n")), InputError);
  CHECK_THROWS_AS(load_zero_table(write_file("empty.txt", "# nothing\n")), InputError);
  CHECK_THROWS_AS(load_zero_table(SINECRIT_TEST_TMP "/missing.txt"), InputError);

  const auto z = find_zeros(10.0, 60.0);
  const auto p = fs::path(SINECRIT_TEST_TMP) / "roundtrip.txt";
  save_zero_table(z, p);
  const auto back = load_zero_table(p);
  CHECK(back.ordinates == z.ordinates);
  CHECK(back.t_min == z.t_min);
  CHECK(back.t_max == z.t_max);
}

TEST_CASE("rescaled fields") {
  const double t = 1000.0;
  const double d = unfolding_density(t, t, UnfoldingScale::local);
  ZeroTable z{{t - 1.0 / d, t + 1.0 / d}, "test", 900, 1100};
  CHECK(std::abs(w_tT(z, t, t, C(0, 1), 50.0, UnfoldingScale::local) - C(0, 1)) < 1e-12);

  const auto zs = find_zeros(100.0, 400.0);
  const double big_t = 400.0;
  const double da = unfolding_density(250.0, big_t, UnfoldingScale::asymptotic);
  std::vector<double> x;
  for (double g : zs.ordinates) x.push_back((g - 250.0) * da);
  CHECK(w_tT(zs, 250.0, big_t, C(0.3, 2.0), 20.0) == w_eval(x, C(0.3, 2.0), 20.0));
  CHECK(unfolding_density(250.0, big_t, UnfoldingScale::asymptotic) == std::log(400.0) / (2 * std::numbers::pi));
  CHECK_THROWS_AS(w_tT(zs, 50.0, big_t, C(0, 1), 20.0), InvalidArgument);

  // Reference values: quadrature of 1/(x - z) + 1/(-x - z) over (r, inf).
  const C tail = unit_density_tail(20.0, C(0.3, 2.0));
  CHECK(tail.real() == doctest::Approx(0.0297050888703151).epsilon(1e-12));
  CHECK(tail.imag() == doctest::Approx(0.199381427939249).epsilon(1e-12));
  CHECK(unit_density_tail(50.0, C(0, 2)).imag() == doctest::Approx(0.0799573742465798).epsilon(1e-12));
  CHECK(w_tT(zs, 250.0, big_t, C(0.3, 2.0), 20.0, UnfoldingScale::asymptotic, true) ==
        w_eval(x, C(0.3, 2.0), 20.0) + unit_density_tail(20.0, C(0.3, 2.0)));
}

TEST_CASE("unfolded zeros") {
  ZeroTable one{{500.0}, "test", 400, 600};
  const auto w = unfold_zeros(one, 500.0);
  REQUIRE(w.points.size() == 1);
  CHECK(w.points[0] == 0.0);
  CHECK_THROWS_AS(unfold_zeros(one, 100.0), InvalidArgument);

  const auto z = find_zeros(1000.0, 10000.0, 8);
  const auto s = unfolded_spacings(z.ordinates, 1000.0, 10000.0);
  double mean = 0;
  for (double v : s) mean += v;
  mean /= s.size();
  CHECK(std::abs(mean - 1.0) < 0.01);
}
