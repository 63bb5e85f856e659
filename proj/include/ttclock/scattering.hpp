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

#include <span>
#include <vector>

#include "ttclock/potential.hpp"
#include "ttclock/types.hpp"

namespace ttclock {

struct SolverOptions {
  int slices = 2000;
  int max_slices = 64000;
  double unitarity_tolerance = 1e-8;
};

struct ScatteringAmplitudes {
  double k = 0.0;
  Complex t{1.0, 0.0};
  Complex r_left{0.0, 0.0};
  Complex r_right{0.0, 0.0};
  double T = 1.0;
  double R = 0.0;
  double phase_t = 0.0;
  double phase_r_left = 0.0;
  double phase_r_right = 0.0;
};

ScatteringAmplitudes make_amplitudes(double k, Complex t, Complex r_left, Complex r_right);

struct InteriorWave {
  double k = 0.0;
  std::vector<double> grid;
  std::vector<Complex> phi_l;
  std::vector<Complex> phi_r;
};

ScatteringAmplitudes solve_amplitudes(const BarrierSpec& barrier, double k,
                                      double spin_shift = 0.0,
                                      const SolverOptions& options = {});

ScatteringAmplitudes analytic_square_amplitudes(double v0, double d, double k,
                                                const UnitSystem& units = {});

InteriorWave interior_wavefunctions(const BarrierSpec& barrier, double k,
                                    const SolverOptions& options = {});

struct UnitarityResidual {
  double probability = 0.0;  // | |t|^2 + |r_l|^2 - 1 |
  double cross = 0.0;        // | t conj(r_l) + conj(t) r_r |
  double max() const { return probability > cross ? probability : cross; }
};

UnitarityResidual check_unitarity(const ScatteringAmplitudes& amps);

// Unwraps phase_t, phase_r_left, phase_r_right along an ordered scan.
void unwrap_phases(std::span<ScatteringAmplitudes> scan);

// k below min_x sqrt(2 m V(x))/hbar.
bool in_tunneling_regime(const BarrierSpec& barrier, double k);

}  // namespace ttclock
