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
#include <set>
#include <vector>

#include "doctest.h"
#include "sinecrit/parallel.hpp"
#include "sinecrit/rng.hpp"

using sinecrit::Philox4x32;
using sinecrit::Rng;

TEST_CASE("philox4x32-10 known answers") {
  const Philox4x32 zero(0);
  CHECK(zero({0, 0, 0, 0}) == Philox4x32::Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});

  const Philox4x32 ones(0xffffffffffffffffULL);
  CHECK(ones({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}) ==
        Philox4x32::Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});

  const Philox4x32 pi(0x299f31d0a4093822ULL);
  CHECK(pi({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}) ==
        Philox4x32::Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("identical seeds give identical streams") {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs |= x != c.next_u64();
  }
  CHECK(differs);
}

TEST_CASE("derived seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(sinecrit::derive_seed(7, i));
  CHECK(seen.size() == 10000);
  CHECK(sinecrit::derive_seed(7, 0) != sinecrit::derive_seed(8, 0));
}

TEST_CASE("distribution moments") {
  Rng rng(1);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0, se = 0, sg = 0, sc2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    se += rng.exponential();
    sg += rng.gamma(2.5);
    const double c = rng.chi(50.0);
    sc2 += c * c;
  }
  // Each bound is five standard errors of the sample mean.
  CHECK(std::abs(su / n - 0.5) < 5.0 * 0.289 / std::sqrt(n));
  CHECK(std::abs(sn / n) < 5.0 / std::sqrt(n));
  CHECK(std::abs(sn2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(se / n - 1.0) < 5.0 / std::sqrt(n));
  CHECK(std::abs(sg / n - 2.5) < 5.0 * std::sqrt(2.5 / n));
  CHECK(std::abs(sc2 / n - 50.0) < 5.0 * std::sqrt(100.0 / n));
}

TEST_CASE("chi sum-of-squares branch has the right mean square") {
  Rng rng(3);
  const int n = 100000;
  double s = 0;
  for (int i = 0; i < n; ++i) {
    const double c = rng.chi(6.0);
    s += c * c;
  }
  CHECK(std::abs(s / n - 6.0) < 5.0 * std::sqrt(12.0 / n));
}

TEST_CASE("run_tasks result does not depend on worker count") {
  auto work = [](std::size_t i) {
    Rng r(sinecrit::derive_seed(99, i));
    return r.normal();
  };
  const auto one = sinecrit::run_tasks(257, 1, work);
  const auto many = sinecrit::run_tasks(257, 7, work);
  CHECK(one == many);
}
