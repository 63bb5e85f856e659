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
#include "ttclock/contextual.hpp"
#include "ttclock/errors.hpp"

using namespace ttclock;
using namespace ttclock::testing;

namespace {

// First-order coefficient of E_{p,+n}, pulled into the outgoing frame.
Matrix2c first_order_outgoing(const Point& p, Side side) {
  const Matrix2c e1 = explicit_povm(p.amps, p.times, p.spin, side, Outcome::PlusN, 1.0) -
                      explicit_povm(p.amps, p.times, p.spin, side, Outcome::PlusN, 0.0);
  return conjugate_by_scattering(p.amps, e1);
}

Matrix2c decomposition(const ContextualValues& c, const ProbabilityOperators& e) {
  Matrix2c s = Matrix2c::Zero();
  for (auto p : {Side::Transmitted, Side::Reflected})
    for (auto m : {Outcome::PlusN, Outcome::MinusN}) s += c.alpha(p, m) * e.element(p, m);
  return s;
}

double max_alpha(const ContextualValues& c) {
  return std::max({std::abs(c.alpha_r_plus), std::abs(c.alpha_r_minus), std::abs(c.alpha_l_plus),
                   std::abs(c.alpha_l_minus)});
}

void check_same(const ContextualValues& a, const ContextualValues& b, double tol) {
  const double s = max_alpha(b);
  CHECK(std::abs(a.alpha_r_plus - b.alpha_r_plus) <= tol * s);
  CHECK(std::abs(a.alpha_r_minus - b.alpha_r_minus) <= tol * s);
  CHECK(std::abs(a.alpha_l_plus - b.alpha_l_plus) <= tol * s);
  CHECK(std::abs(a.alpha_l_minus - b.alpha_l_minus) <= tol * s);
}

}  // namespace

TEST_CASE("no barrier leaves the operator unchanged") {
  const auto amps = make_amplitudes(1.0, 1.0, 0.0, 0.0);
  const Hermitian2 c{0.5, 0.5, 0.4};
  const auto o = transformed_operators(c, amps, make_complex_times(0.0, 0.0, 0.0),
                                       postselection_overlaps(kTheta, kPhi));
  CHECK(o.t11 == 0.5);
  CHECK(o.t22 == 0.5);
  CHECK(std::abs(o.t12 - c.e12()) < 1e-15);
}

TEST_CASE("explicit transformed elements agree with matrix conjugation") {
  for (const auto& b : {square(), quadratic(), trapezoid()}) {
    for (double f : {0.2, 0.5, 0.8}) {
      const auto p = make_point(b, f * kK0);
      const Matrix2c ref = conjugate_by_scattering(p.amps, p.dwell.matrix());
      const double scale = p.dwell.matrix().norm();
      CHECK(std::abs(p.transformed.t11 - ref(0, 0).real()) < 1e-12 * scale);
      CHECK(std::abs(p.transformed.t22 - ref(1, 1).real()) < 1e-12 * scale);
      CHECK(std::abs(p.transformed.t12 - ref(0, 1)) < 1e-12 * scale);
      CHECK(std::abs(p.transformed.t21() - ref(1, 0)) < 1e-12 * scale);
      CHECK(p.transformed.t11 + p.transformed.t22 ==
            doctest::Approx(p.dwell.c_ll + p.dwell.c_rr).epsilon(1e-10));

      const Matrix2c er = first_order_outgoing(p, Side::Transmitted);
      const Matrix2c el = first_order_outgoing(p, Side::Reflected);
      const double ts = p.times.max_abs();
      CHECK(std::abs(p.transformed.er11 - er(0, 0).real()) < 1e-12 * ts);
      CHECK(std::abs(p.transformed.er12 - er(0, 1)) < 1e-12 * ts);
      CHECK(std::abs(er(1, 1)) < 1e-12 * ts);
      CHECK(std::abs(p.transformed.el22 - el(1, 1).real()) < 1e-12 * ts);
      CHECK(std::abs(p.transformed.el12 - el(0, 1)) < 1e-12 * ts);
      CHECK(std::abs(el(0, 0)) < 1e-12 * ts);
    }
  }
}

TEST_CASE("context classification") {
  CHECK(detect_singular_context(postselection_overlaps(kPi / 2.0, kPi / 2.0)).kind ==
        ContextKind::XYPlane);
  CHECK(detect_singular_context(postselection_overlaps(kTheta, kPhi)).kind == ContextKind::Regular);
  CHECK(detect_singular_context(postselection_overlaps(kPi / 2.0, 1e-12)).kind ==
        ContextKind::NearSingular);
  CHECK(detect_singular_context(postselection_overlaps(1e-12, kPhi)).kind == ContextKind::XZPlane);
}

TEST_CASE("singular contexts are rejected by both routes") {
  const auto b = square();
  for (auto [theta, phi, kind] : {std::tuple{1e-12, kPhi, ContextKind::XZPlane},
                                  std::tuple{kPi / 2.0, kPi / 2.0, ContextKind::XYPlane}}) {
    const auto p = make_point(b, 0.5 * kK0, theta, phi);
    try {
      solve_cvs_linear(p.transformed, p.spin, p.omega);
      FAIL("linear route accepted a singular context");
    } catch (const SingularContext& e) {
      CHECK(e.kind() == kind);
      const std::string plane = kind == ContextKind::XZPlane ? "x-z" : "x-y";
      CHECK(std::string(e.what()).find(plane) != std::string::npos);
    }
    try {
      cvs_closed_form(p.transformed, p.amps, p.times, p.spin, p.omega);
      FAIL("closed form accepted a singular context");
    } catch (const SingularContext& e) {
      CHECK(e.kind() == kind);
    }
  }
}

TEST_CASE("degenerate system and bad omega") {
  const auto spin = postselection_overlaps(kTheta, kPhi);
  TransformedOperators o;
  o.t11 = 1.0;
  o.t22 = 1.0;
  try {
    solve_cvs_linear(o, spin, 1.0);
    FAIL("expected SingularContext");
  } catch (const SingularContext& e) {
    CHECK(e.kind() == ContextKind::Degenerate);
  }
  CHECK_THROWS_AS(solve_cvs_linear(o, spin, 0.0), ConfigError);
  CHECK_THROWS_AS(solve_cvs_linear(o, spin, -1.0), ConfigError);
}

TEST_CASE("decomposition reproduces the dwell operator") {
  for (const auto& b : {square(), quadratic(), trapezoid()}) {
    for (int i = 0; i < 20; ++i) {
      const auto p = make_point(b, (0.05 + 0.9 * i / 19.0) * kK0);
      const auto c = solve_cvs_linear(p.transformed, p.spin, p.omega);
      const Matrix2c td = p.dwell.matrix();
      const Matrix2c s = decomposition(c, p.povm);
      CHECK((s - td).cwiseAbs().maxCoeff() <= 1e-8 * td.norm());
      CHECK(std::isfinite(c.condition_number));
      CHECK(c.condition_number >= 1.0);
    }
  }
}

TEST_CASE("pole structure") {
  const auto p = make_point(trapezoid(), 0.4 * kK0);
  const auto c = solve_cvs_linear(p.transformed, p.spin, p.omega);
  CHECK(c.alpha_r_plus == doctest::Approx(c.alpha0_r + c.alpha1_r / (p.omega * p.spin.x0_plus)));
  CHECK(c.alpha_l_minus ==
        doctest::Approx(c.alpha0_l - c.alpha1_l / (p.omega * p.spin.x0_minus)));
  // first-order parts weighted by x0 cancel
  const double pr = (c.alpha_r_plus - c.alpha0_r) * p.spin.x0_plus;
  const double mr = (c.alpha_r_minus - c.alpha0_r) * p.spin.x0_minus;
  CHECK(std::abs(pr + mr) < 1e-12 * std::abs(pr));
}

TEST_CASE("linear solve and closed form agree on random draws") {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> th(0.05, kPi - 0.05), ph(0.05, 2.0 * kPi - 0.05);
  int done = 0;
  while (done < 200) {
    const auto d = random_barrier(rng);
    const double theta = th(rng), phi = ph(rng);
    const auto spin = postselection_overlaps(theta, phi);
    if (detect_singular_context(spin, 1e-3).kind != ContextKind::Regular) continue;
    const auto p = make_point(d.barrier, d.k, theta, phi);
    const auto lin = solve_cvs_linear(p.transformed, p.spin, p.omega);
    const auto cf = cvs_closed_form(p.transformed, p.amps, p.times, p.spin, p.omega);
    check_same(cf, lin, 1e-8);
    ++done;
  }
}

TEST_CASE("square barrier CVs") {
  const auto b = square();
  const auto spin = postselection_overlaps(kTheta, kPhi);
  const double im = spin.x1.imag();
  REQUIRE(im > 0.0);
  double lo[4] = {1e300, 1e300, 1e300, 1e300}, hi[4] = {-1e300, -1e300, -1e300, -1e300};
  for (int i = 0; i <= 80; ++i) {
    const auto p = make_point(b, (0.1 + 0.8 * i / 80.0) * kK0);
    const auto c = cvs_closed_form(p.transformed, p.amps, p.times, p.spin, p.omega);
    const double w = p.omega;
    const double pole = std::abs(c.alpha1_r / w);
    CHECK(std::abs(c.alpha0_r) <= 1e-8 * pole);
    CHECK(std::abs(c.alpha0_l) <= 1e-8 * pole);
    CHECK(c.f_r == doctest::Approx(1.0 / im).epsilon(1e-8));
    CHECK(c.f_l == doctest::Approx(-1.0 / im).epsilon(1e-8));
    CHECK(w * c.alpha_r_plus == doctest::Approx(-spin.x0_minus / im).epsilon(1e-8));
    CHECK(w * c.alpha_r_minus == doctest::Approx(spin.x0_plus / im).epsilon(1e-8));
    CHECK(c.alpha_r_plus < 0.0);
    CHECK(c.alpha_r_minus > 0.0);
    const double v[4] = {w * c.alpha_r_plus, w * c.alpha_r_minus, w * c.alpha_l_plus,
                         w * c.alpha_l_minus};
    for (int j = 0; j < 4; ++j) {
      lo[j] = std::min(lo[j], v[j]);
      hi[j] = std::max(hi[j], v[j]);
    }
  }
  for (int j = 0; j < 4; ++j) CHECK(hi[j] - lo[j] < 1e-6 * std::abs(0.5 * (hi[j] + lo[j])));
}

TEST_CASE("CVs diverge as 1/omega") {
  const auto p = make_point(quadratic(), 0.5 * kK0);
  const auto c1 = solve_cvs_linear(p.transformed, p.spin, p.omega);
  const auto c2 = solve_cvs_linear(p.transformed, p.spin, 2.0 * p.omega);
  const double d1 = c1.alpha_r_plus - c1.alpha0_r;
  const double d2 = c2.alpha_r_plus - c2.alpha0_r;
  CHECK(std::abs(d2 - 0.5 * d1) <= 1e-12 * std::abs(d1));
}

TEST_CASE("second-moment CVs") {
  const auto p = make_point(quadratic(), 0.5 * kK0);
  const auto squared = squared_matrix(p.dwell);
  const auto beta = second_moment_cvs(squared, p.amps, p.times, p.spin, p.omega);
  const auto alpha = solve_cvs_linear(p.transformed, p.spin, p.omega);
  const double s = max_alpha(beta);
  CHECK(std::abs(beta.alpha_r_plus - beta.alpha_l_plus) < 1e-6 * s);
  CHECK(std::abs(beta.alpha_r_minus - beta.alpha_l_minus) < 1e-6 * s);
  CHECK(std::abs(beta.alpha_r_plus - alpha.alpha_r_plus * alpha.alpha_r_plus) > 1e-6 * s);
  const Matrix2c sum = decomposition(beta, p.povm);
  CHECK((sum - squared.matrix()).cwiseAbs().maxCoeff() < 1e-8 * squared.matrix().norm());
}

TEST_CASE("diagonal operator second moment reduces to squares") {
  const auto p = make_point(trapezoid(), 0.5 * kK0);
  DwellMatrix d;
  d.c_ll = 0.3;
  d.c_rr = 0.7;
  const auto beta = second_moment_cvs(squared_matrix(d), p.amps, p.times, p.spin, p.omega);
  const Matrix2c sum = decomposition(beta, p.povm);
  CHECK(std::abs(sum(0, 0) - 0.09) < 1e-8);
  CHECK(std::abs(sum(1, 1) - 0.49) < 1e-8);
  CHECK(std::abs(sum(0, 1)) < 1e-8);
}
