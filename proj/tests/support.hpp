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


#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ttclock/contextual.hpp"
#include "ttclock/dwell.hpp"
#include "ttclock/estimators.hpp"
#include "ttclock/larmor.hpp"
#include "ttclock/potential.hpp"
#include "ttclock/scattering.hpp"
#include "ttclock/spin_meter.hpp"

namespace ttclock::testing {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kK0 = 3.0 * kPi;
inline constexpr double kV0 = 9.0 * kPi * kPi;
inline constexpr double kTheta = kPi / 2.0 - kPi / 8.0;
inline constexpr double kPhi = kPi / 4.0;

inline BarrierSpec square(double v0 = kV0, double d = 1.0) {
  BarrierParams p;
  p.v0 = v0;
  p.width = d;
  return make_barrier(BarrierKind::Square, p);
}

inline BarrierSpec quadratic(double v0 = kV0, double a = kK0 * kK0, double d = 1.0) {
  BarrierParams p;
  p.v0 = v0;
  p.width = d;
  p.quad_coeff = a;
  return make_barrier(BarrierKind::QuadraticSymmetric, p);
}

inline BarrierSpec trapezoid(double v0 = kV0, double eps = 0.5 * kK0 * kK0, double d = 1.0) {
  BarrierParams p;
  p.v0 = v0;
  p.width = d;
  p.slope_total = eps;
  return make_barrier(BarrierKind::Trapezoid, p);
}

inline double rel(Complex a, Complex b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// Everything needed downstream at one k, assembled by hand rather than via analyze_point.
struct Point {
  ScatteringAmplitudes amps;
  InteriorWave wave;
  DwellMatrix dwell;
  ComplexTimes times;
  SpinPostSelection spin;
  double omega = 0.0;
  MeasurementOperators ops;
  ProbabilityOperators povm;
  TransformedOperators transformed;
};

inline Point make_point(const BarrierSpec& b, double k, double theta = kTheta,
                        double phi = kPhi, double omega = 0.0) {
  Point p;
  p.amps = solve_amplitudes(b, k);
  p.wave = interior_wavefunctions(b, k);
  p.dwell = dwell_matrix(p.wave, b.units);
  p.times = complex_times(b, k);
  p.spin = postselection_overlaps(theta, phi);
  p.omega = omega > 0.0 ? omega : default_probe_omega(b);
  p.ops = measurement_operators(p.amps, p.times, p.spin, p.omega);
  p.povm = povm_elements(p.ops, p.omega);
  p.transformed = transformed_operators(p.dwell, p.amps, p.times, p.spin);
  return p;
}

// Square barrier interior solution A e^{kx} + B e^{-kx}, matched at the left edge to the
// closed-form exterior wave.
inline Complex square_interior_phi_l(double v0, double d, double k, double x,
                                     const UnitSystem& u = {}) {
  const auto a = analytic_square_amplitudes(v0, d, k, u);
  const double kappa = std::sqrt(2.0 * u.mass * v0 / (u.hbar * u.hbar) - k * k);
  const double e = -0.5 * d;
  const Complex i(0.0, 1.0);
  const Complex psi = std::exp(i * k * e) + a.r_left * std::exp(-i * k * e);
  const Complex dpsi = i * k * (std::exp(i * k * e) - a.r_left * std::exp(-i * k * e));
  const Complex A = 0.5 * (psi + dpsi / kappa) * std::exp(-kappa * e);
  const Complex B = 0.5 * (psi - dpsi / kappa) * std::exp(kappa * e);
  return A * std::exp(kappa * x) + B * std::exp(-kappa * x);
}

// -(m / hbar kappa) d ln(amp)/d kappa by a 5-point stencil on the closed form.
inline ComplexTimes finite_difference_square_larmor(double v0, double d, double k,
                                                    const UnitSystem& u = {}) {
  const double k0sq = 2.0 * u.mass * v0 / (u.hbar * u.hbar);
  const double kappa = std::sqrt(k0sq - k * k);
  const double h = 1e-4 * kappa;
  auto at = [&](double kap) {
    const double v = (kap * kap + k * k) * u.hbar * u.hbar / (2.0 * u.mass);
    return analytic_square_amplitudes(v, d, k, u);
  };
  const auto c = at(kappa);
  Complex dlt = 0.0, dlr = 0.0;
  const double w[4] = {1.0, -8.0, 8.0, -1.0};
  const double off[4] = {-2.0, -1.0, 1.0, 2.0};
  for (int j = 0; j < 4; ++j) {
    const auto s = at(kappa + off[j] * h);
    dlt += w[j] * std::log(s.t / c.t);
    dlr += w[j] * std::log(s.r_left / c.r_left);
  }
  dlt /= 12.0 * h;
  dlr /= 12.0 * h;
  const double pref = -u.mass / (u.hbar * kappa);
  return make_complex_times(pref * dlt, pref * dlr, pref * dlr);
}

// Explicit first-order probability operators written out element by element.
inline Matrix2c explicit_povm(const ScatteringAmplitudes& a, const ComplexTimes& tau,
                              const SpinPostSelection& s, Side p, Outcome m, double omega) {
  const double sign = m == Outcome::PlusN ? 1.0 : -1.0;
  const double x0 = m == Outcome::PlusN ? s.x0_plus : s.x0_minus;
  const Complex x1 = s.x1;
  const Complex t = a.t, rl = a.r_left, rr = a.r_right;
  const double T = a.T, R = a.R;
  const Complex tt = tau.tau_t, trr = tau.tau_r_right, trl = tau.tau_r_left;
  Matrix2c zero, first, second;
  if (p == Side::Transmitted) {
    zero << T, std::conj(t) * rr, std::conj(rr) * t, R;
    first << T * tt, std::conj(t) * rr * trr, std::conj(rr) * t * tt, R * trr;
    second << T * std::conj(tt), std::conj(t) * rr * std::conj(tt),
        std::conj(rr) * t * std::conj(trr), R * std::conj(trr);
  } else {
    zero << R, t * std::conj(rl), rl * std::conj(t), T;
    first << R * trl, std::conj(rl) * t * tt, std::conj(t) * rl * trl, T * tt;
    second << R * std::conj(trl), std::conj(rl) * t * std::conj(trl),
        std::conj(t) * rl * std::conj(tt), T * std::conj(tt);
  }
  return zero * x0 + sign * omega / 2.0 * (first * x1 + second * std::conj(x1));
}

inline Hermitian2 random_hermitian(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), Complex(u(rng), u(rng))};
}

// Random barrier among the three analytic kinds with k inside the tunneling regime.
struct RandomDraw {
  BarrierSpec barrier;
  double k = 0.0;
};

inline RandomDraw random_barrier(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double d = 0.5 + 1.5 * u(rng);
  const double k0 = (1.0 + 3.0 * u(rng)) * kPi / d;
  const double v0 = k0 * k0;  // m = 1/2, hbar = 1
  RandomDraw r;
  switch (kind(rng)) {
    case 0: r.barrier = square(v0, d); break;
    case 1: r.barrier = quadratic(v0, (0.2 + u(rng)) * k0 * k0 / (d * d), d); break;
    default: r.barrier = trapezoid(v0, (0.1 + 0.8 * u(rng)) * k0 * k0, d); break;
  }
  r.k = (0.1 + 0.8 * u(rng)) * k0;
  return r;
}

}  // namespace ttclock::testing
