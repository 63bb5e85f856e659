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

#include "ttclock/larmor.hpp"
#include "ttclock/scattering.hpp"
#include "ttclock/types.hpp"

namespace ttclock {

// p = r is the transmitted side (detector on the right), p = l the reflected side.
enum class Side { Transmitted, Reflected };
enum class Outcome { PlusN, MinusN };

namespace spin {
Vector2c plus_z();
Vector2c minus_z();
Vector2c plus_x();
Vector2c minus_x();
}  // namespace spin

struct SpinPostSelection {
  double theta = 0.0;
  double phi = 0.0;
  Vector2c n_plus;
  Vector2c n_minus;
  double x0_plus = 0.5;
  double x0_minus = 0.5;
  Complex x1{0.0, 0.0};

  const Vector2c& state(Outcome m) const { return m == Outcome::PlusN ? n_plus : n_minus; }
  double x0(Outcome m) const { return m == Outcome::PlusN ? x0_plus : x0_minus; }
};

SpinPostSelection postselection_overlaps(double theta, double phi);

// Pi_r = |k><k|, Pi_l = |-k><-k|
Matrix2c projector(Side side);

// [[t, r_r], [r_l, t]]
Matrix2c scattering_matrix(const ScatteringAmplitudes& amps);

struct MeasurementOperators {
  Matrix2c s0;
  Matrix2c m0_plus, m0_minus;
  Matrix2c m1_plus, m1_minus;
  double omega = 0.0;

  const Matrix2c& m0(Outcome m) const { return m == Outcome::PlusN ? m0_plus : m0_minus; }
  const Matrix2c& m1(Outcome m) const { return m == Outcome::PlusN ? m1_plus : m1_minus; }
  Matrix2c full(Outcome m) const { return m0(m) + omega * m1(m); }
};

MeasurementOperators measurement_operators(const ScatteringAmplitudes& amps,
                                           const ComplexTimes& times,
                                           const SpinPostSelection& spin, double omega = 0.0);

struct ProbabilityOperators {
  Matrix2c e_r_plus, e_r_minus, e_l_plus, e_l_minus;
  double omega = 0.0;

  const Matrix2c& element(Side p, Outcome m) const;
  Matrix2c sum() const { return e_r_plus + e_r_minus + e_l_plus + e_l_minus; }
};

ProbabilityOperators povm_elements(const MeasurementOperators& ops, double omega);

// Untruncated POVM from the two spin-resolved S-matrices.
ProbabilityOperators exact_povm(const SpinfulAmplitudes& spinful, const SpinPostSelection& spin);

struct RotatedSpins {
  Vector2c s_r;
  Vector2c s_l;
  double precession_angle = 0.0;  // omega * tau_yt
  double tilt = 0.0;              // omega * tau_zt
};

RotatedSpins rotated_spin_states(const ComplexTimes& times, double omega);

// (<sigma_x>, <sigma_y>, <sigma_z>)
Eigen::Vector3d bloch_vector(const Vector2c& state);

}  // namespace ttclock
