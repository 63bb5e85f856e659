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

#include "ttclock/potential.hpp"
#include "ttclock/scattering.hpp"
#include "ttclock/types.hpp"

namespace ttclock {

struct ComplexTimes {
  double tau_zt = 0.0;
  double tau_zr = 0.0;
  double tau_yt = 0.0;
  double tau_yr_left = 0.0;
  double tau_yr_right = 0.0;
  Complex tau_t{0.0, 0.0};
  Complex tau_r_left{0.0, 0.0};
  Complex tau_r_right{0.0, 0.0};
  Complex delta_tau{0.0, 0.0};

  double max_abs() const;
};

ComplexTimes make_complex_times(Complex tau_t, Complex tau_r_left, Complex tau_r_right);

struct SpinfulAmplitudes {
  double omega_probe = 0.0;
  ScatteringAmplitudes plus;
  ScatteringAmplitudes minus;
};

struct LarmorOptions {
  double probe_omega = 0.0;  // <= 0 selects default_probe_omega
  bool richardson = true;
  SolverOptions solver;
};

// 1e-6 * max V / hbar
double default_probe_omega(const BarrierSpec& barrier);

// hbar*omega well below both the barrier height and the local V - E.
bool in_weak_probe_regime(const BarrierSpec& barrier, double k, double omega);

SpinfulAmplitudes spin_split_solve(const BarrierSpec& barrier, double k, double omega_probe,
                                   const SolverOptions& options = {});

ComplexTimes complex_times(const BarrierSpec& barrier, double k,
                           const LarmorOptions& options = {});

ComplexTimes analytic_square_larmor(double v0, double d, double k,
                                    const UnitSystem& units = {});

}  // namespace ttclock
