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


#include "ttclock/larmor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ttclock/errors.hpp"

namespace ttclock {

double ComplexTimes::max_abs() const {
  return std::max({std::abs(tau_t), std::abs(tau_r_left), std::abs(tau_r_right)});
}

ComplexTimes make_complex_times(Complex tau_t, Complex tau_r_left, Complex tau_r_right) {
  ComplexTimes c;
  c.tau_t = tau_t;
  c.tau_r_left = tau_r_left;
  c.tau_r_right = tau_r_right;
  c.tau_zt = tau_t.real();
  c.tau_yt = tau_t.imag();
  c.tau_zr = 0.5 * (tau_r_left.real() + tau_r_right.real());
  c.tau_yr_left = tau_r_left.imag();
  c.tau_yr_right = tau_r_right.imag();
  c.delta_tau = tau_t - tau_r_left;
  return c;
}

double default_probe_omega(const BarrierSpec& barrier) {
  return 1e-6 * barrier.max_potential() / barrier.units.hbar;
}

bool in_weak_probe_regime(const BarrierSpec& barrier, double k, double omega) {
  const double shift = barrier.units.hbar * omega;
  const double vmax = barrier.max_potential();
  if (!(shift > 0.0) || shift > 1e-3 * vmax) return false;
  const double energy = barrier.units.hbar * barrier.units.hbar * k * k / (2.0 * barrier.units.mass);
  const double gap = barrier.min_potential() - energy;
  return gap <= 0.0 || shift <= 1e-3 * gap;
}

SpinfulAmplitudes spin_split_solve(const BarrierSpec& barrier, double k, double omega_probe,
                                   const SolverOptions& options) {
  if (!(omega_probe >= 0.0) || !std::isfinite(omega_probe))
    throw ConfigError("probe_omega: must be >= 0");
  const double half = 0.5 * barrier.units.hbar * omega_probe;
  SpinfulAmplitudes s;
  s.omega_probe = omega_probe;
  s.plus = solve_amplitudes(barrier, k, -half, options);
  s.minus = solve_amplitudes(barrier, k, half, options);
  return s;
}

namespace {

struct RawTimes {
  Complex t, rl, rr;
};

RawTimes log_ratio_times(const BarrierSpec& barrier, double k, double omega,
                         const SolverOptions& options) {
  const auto s = spin_split_solve(barrier, k, omega, options);
  return {std::log(s.plus.t / s.minus.t) / omega,
          std::log(s.plus.r_left / s.minus.r_left) / omega,
          std::log(s.plus.r_right / s.minus.r_right) / omega};
}

}  // namespace

ComplexTimes complex_times(const BarrierSpec& barrier, double k, const LarmorOptions& options) {
  const double omega =
      options.probe_omega > 0.0 ? options.probe_omega : default_probe_omega(barrier);
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw NumericalError("complex_times: probe frequency must be > 0 (flat potential?)");
  const auto base = solve_amplitudes(barrier, k, 0.0, options.solver);
  if (std::abs(base.t) < 1e-12) {
    std::ostringstream msg;
    msg << "complex_times: |t| = " << std::abs(base.t) << " below 1e-12 (opaque barrier)";
    throw NumericalError(msg.str());
  }
  if (std::abs(base.r_left) < 1e-12) {
    std::ostringstream msg;
    msg << "complex_times: |r| = " << std::abs(base.r_left) << " below 1e-12 (no reflection)";
    throw NumericalError(msg.str());
  }
  const auto full = log_ratio_times(barrier, k, omega, options.solver);
  if (!options.richardson) return make_complex_times(full.t, full.rl, full.rr);
  const auto half = log_ratio_times(barrier, k, 0.5 * omega, options.solver);
  return make_complex_times((4.0 * half.t - full.t) / 3.0, (4.0 * half.rl - full.rl) / 3.0,
                            (4.0 * half.rr - full.rr) / 3.0);
}

ComplexTimes analytic_square_larmor(double v0, double d, double k, const UnitSystem& units) {
  const double k0sq = 2.0 * units.mass * v0 / (units.hbar * units.hbar);
  if (!(k > 0.0) || !(k * k < k0sq))
    throw ConfigError("analytic_square_larmor: requires 0 < k < k0");
  const double kappa = std::sqrt(k0sq - k * k);
  const double th = std::tanh(kappa * d);
  const double asym = kappa / k - k / kappa;
  // D and dD/dkappa, both divided by cosh(kappa d)
  const Complex dn = 1.0 + 0.5 * kI * asym * th;
  const Complex ddn = d * th + 0.5 * kI * (1.0 / k + k / (kappa * kappa)) * th + 0.5 * kI * asym * d;
  const double pref = units.mass / (units.hbar * kappa);
  const Complex tau_t = pref * ddn / dn;
  const double extra = (1.0 / k - k / (kappa * kappa)) / (kappa / k + k / kappa) + d / th;
  const Complex tau_r = tau_t - pref * extra;
  return make_complex_times(tau_t, tau_r, tau_r);
}

}  // namespace ttclock
