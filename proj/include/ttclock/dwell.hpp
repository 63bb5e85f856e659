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

#include "ttclock/potential.hpp"
#include "ttclock/scattering.hpp"
#include "ttclock/types.hpp"

namespace ttclock {

enum class Channel { Left, Right };

struct DwellMatrix {
  double k = 0.0;
  double c_ll = 0.0;
  double c_rr = 0.0;
  Complex c_rl{0.0, 0.0};

  Complex c_lr() const { return std::conj(c_rl); }
  Hermitian2 elements() const { return {c_ll, c_rr, c_rl}; }
  Matrix2c matrix() const { return elements().matrix(); }
};

struct DwellEigensystem {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  Vector2c state_plus;
  Vector2c state_minus;
};

struct WavePacket {
  double k_center = 0.0;
  double k_sigma = 0.0;

  // |A(k)|^2 before window renormalization
  double density(double k) const;
  void validate() const;
};

// Composite Simpson on a uniform grid; Simpson 3/8 closes an odd interval count.
double simpson(std::span<const double> y, double h);
Complex simpson(std::span<const Complex> y, double h);

// int conj(phi_bra) phi_ket dx over the barrier.
Complex barrier_overlap(const InteriorWave& wave, Channel bra, Channel ket);

DwellMatrix dwell_matrix(const InteriorWave& wave, const UnitSystem& units);

DwellEigensystem dwell_eigensystem(const Hermitian2& op);
inline DwellEigensystem dwell_eigensystem(const DwellMatrix& c) {
  return dwell_eigensystem(c.elements());
}

Hermitian2 squared_matrix(const DwellMatrix& c);

double wavepacket_dwell(const BarrierSpec& barrier, const WavePacket& packet,
                        const SolverOptions& options = {});

}  // namespace ttclock
