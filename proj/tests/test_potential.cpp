// Copyright 2026 The ttclock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <random>

#include "support.hpp"
#include "ttclock/errors.hpp"
#include "ttclock/potential.hpp"

using namespace ttclock;
using namespace ttclock::testing;

TEST_CASE("preset square barrier exposes k0 = 3 pi") {
  const auto b = square();
  CHECK(b.k0() == doctest::Approx(3.0 * kPi).epsilon(1e-15));
  CHECK(b.half_width() == 0.5);
}

TEST_CASE("zero-height square barrier is identically zero") {
  const auto b = square(0.0, 1.0);
  for (double x : {-2.0, -0.5, 0.0, 0.3, 0.5, 4.0}) CHECK(evaluate(b, x) == 0.0);
}

TEST_CASE("trapezoid endpoint values") {
  const auto b = trapezoid();
  CHECK(evaluate(b, -0.5) == doctest::Approx(kV0).epsilon(1e-14));
  CHECK(evaluate(b, 0.5) == doctest::Approx(kV0 + 0.5 * kV0).epsilon(1e-14));
}

TEST_CASE("evaluate examples") {
  const auto sq = square(10.0, 2.0);
  CHECK(evaluate(sq, 0.0, 0.0) == 10.0);
  CHECK(evaluate(sq, 1.5, -0.01) == 0.0);
  CHECK(evaluate(sq, 0.2, -0.01) == doctest::Approx(9.99));
  const auto tr = trapezoid(10.0, 4.0, 2.0);
  CHECK(evaluate(tr, 0.0) == doctest::Approx(12.0));
  const auto q = quadratic(10.0, 3.0, 2.0);
  CHECK(evaluate(q, 0.5) == doctest::Approx(10.75));
}

TEST_CASE("potential vanishes outside the support for any shift") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const BarrierSpec bs[] = {square(), quadratic(), trapezoid()};
  for (const auto& b : bs) {
    for (int i = 0; i < 200; ++i) {
      const double x = (0.5 + 5.0 * std::abs(u(rng))) * (u(rng) < 0 ? -1.0 : 1.0);
      if (std::abs(x) <= 0.5) continue;
      CHECK(evaluate(b, x, 100.0 * u(rng)) == 0.0);
    }
  }
}

TEST_CASE("mirror symmetry of square and quadratic, trapezoid sum rule") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const auto sq = square();
  const auto q = quadratic();
  const double eps = 0.37 * kV0;
  const auto tr = trapezoid(kV0, eps);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    CHECK(evaluate(sq, x) == evaluate(sq, -x));
    CHECK(evaluate(q, x) == doctest::Approx(evaluate(q, -x)).epsilon(1e-14));
    CHECK(evaluate(tr, x) + evaluate(tr, -x) == doctest::Approx(2.0 * kV0 + eps).epsilon(1e-14));
  }
  CHECK(is_symmetric(sq));
  CHECK(is_symmetric(q));
  CHECK_FALSE(is_symmetric(tr));
}

TEST_CASE("mirrored trapezoid reverses the slope") {
  const auto tr = trapezoid(10.0, 4.0, 2.0);
  const auto m = mirrored(tr);
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0})
    CHECK(evaluate(m, x) == doctest::Approx(evaluate(tr, -x)).epsilon(1e-14));
}

TEST_CASE("sampled barrier uses midpoint cells") {
  BarrierParams p;
  p.width = 1.0;
  p.samples = {{-0.5, 1.0}, {0.0, 3.0}, {0.5, 2.0}};
  const auto b = make_barrier(BarrierKind::Sampled, p);
  CHECK(b.v0 == 3.0);
  CHECK(evaluate(b, -0.4) == 1.0);
  CHECK(evaluate(b, -0.1) == 3.0);
  CHECK(evaluate(b, 0.3) == 2.0);
  CHECK(evaluate(b, 0.6) == 0.0);
}

TEST_CASE("make_barrier rejects invalid parameters") {
  BarrierParams p;
  p.v0 = 1.0;
  p.width = 0.0;
  CHECK_THROWS_AS(make_barrier(BarrierKind::Square, p), ConfigError);
  p.width = -1.0;
  CHECK_THROWS_AS(make_barrier(BarrierKind::Square, p), ConfigError);
  p.width = 1.0;
  p.v0 = -2.0;
  CHECK_THROWS_AS(make_barrier(BarrierKind::Square, p), ConfigError);

  BarrierParams s;
  s.width = 1.0;
  CHECK_THROWS_AS(make_barrier(BarrierKind::Sampled, s), ConfigError);
  s.samples = {{-0.5, 1.0}, {0.2, 1.0}, {0.1, 1.0}, {0.5, 1.0}};
  CHECK_THROWS_AS(make_barrier(BarrierKind::Sampled, s), ConfigError);
  s.samples = {{-0.5, 1.0}, {0.0, -1.0}, {0.5, 1.0}};
  CHECK_THROWS_AS(make_barrier(BarrierKind::Sampled, s), ConfigError);

  BarrierParams t;
  t.v0 = 1.0;
  t.slope_total = -3.0;
  CHECK_THROWS_AS(make_barrier(BarrierKind::Trapezoid, t), ConfigError);
}

TEST_CASE("barrier kind names round trip") {
  for (auto k : {BarrierKind::Square, BarrierKind::QuadraticSymmetric, BarrierKind::Trapezoid,
                 BarrierKind::Sampled})
    CHECK(parse_barrier_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_barrier_kind("well"), ConfigError);
}

TEST_CASE("unit system validation") {
  UnitSystem u;
  CHECK_NOTHROW(u.validate());
  u.hbar = 0.0;
  CHECK_THROWS_AS(u.validate(), ConfigError);
  u = {};
  u.mass = -1.0;
  CHECK_THROWS_AS(u.validate(), ConfigError);
}
