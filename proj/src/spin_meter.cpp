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


#include "ttclock/spin_meter.hpp"

#include <cmath>
#include <numbers>

#include "ttclock/errors.hpp"

namespace ttclock {

namespace spin {
Vector2c plus_z() { return Vector2c(1.0, 0.0); }
Vector2c minus_z() { return Vector2c(0.0, 1.0); }
Vector2c plus_x() { return (plus_z() + minus_z()) / std::sqrt(2.0); }
Vector2c minus_x() { return (plus_z() - minus_z()) / std::sqrt(2.0); }
}  // namespace spin

SpinPostSelection postselection_overlaps(double theta, double phi) {
  if (!(theta > 0.0 && theta < std::numbers::pi))
    throw ConfigError("spin.theta: must lie in the open interval (0, pi)");
  if (!(phi > 0.0 && phi < 2.0 * std::numbers::pi))
    throw ConfigError("spin.phi: must lie in the open interval (0, 2 pi)");
  SpinPostSelection s;
  s.theta = theta;
  s.phi = phi;
  const Complex e = std::polar(1.0, phi);
  s.n_plus = Vector2c(std::cos(theta / 2.0), e * std::sin(theta / 2.0));
  s.n_minus = Vector2c(std::sin(theta / 2.0), -e * std::cos(theta / 2.0));
  const Vector2c px = spin::plus_x();
  const Vector2c mx = spin::minus_x();
  s.x0_plus = std::norm(s.n_plus.dot(px));
  s.x0_minus = std::norm(s.n_minus.dot(px));
  s.x1 = px.dot(s.n_plus) * s.n_plus.dot(mx);
  return s;
}

Matrix2c projector(Side side) {
  Matrix2c p = Matrix2c::Zero();
  if (side == Side::Transmitted)
    p(0, 0) = 1.0;
  else
    p(1, 1) = 1.0;
  return p;
}

Matrix2c scattering_matrix(const ScatteringAmplitudes& a) {
  Matrix2c s;
  s << a.t, a.r_right, a.r_left, a.t;
  return s;
}

MeasurementOperators measurement_operators(const ScatteringAmplitudes& a,
                                           const ComplexTimes& tau,
                                           const SpinPostSelection& spin, double omega) {
  Matrix2c s1;
  s1 << a.t * tau.tau_t, a.r_right * tau.tau_r_right, a.r_left * tau.tau_r_left, a.t * tau.tau_t;
  const Vector2c px = spin::plus_x();
  const Vector2c mx = spin::minus_x();
  MeasurementOperators m;
  m.s0 = scattering_matrix(a);
  m.m0_plus = m.s0 * spin.n_plus.dot(px);
  m.m0_minus = m.s0 * spin.n_minus.dot(px);
  m.m1_plus = 0.5 * s1 * spin.n_plus.dot(mx);
  m.m1_minus = 0.5 * s1 * spin.n_minus.dot(mx);
  m.omega = omega;
  return m;
}

const Matrix2c& ProbabilityOperators::element(Side p, Outcome m) const {
  if (p == Side::Transmitted) return m == Outcome::PlusN ? e_r_plus : e_r_minus;
  return m == Outcome::PlusN ? e_l_plus : e_l_minus;
}

ProbabilityOperators povm_elements(const MeasurementOperators& ops, double omega) {
  if (!(omega >= 0.0)) throw ConfigError("omega: must be >= 0");
  auto element = [&](Side p, Outcome m) {
    const Matrix2c a0 = projector(p) * ops.m0(m);
    const Matrix2c a1 = projector(p) * ops.m1(m);
    return Matrix2c(a0.adjoint() * a0 + omega * (a0.adjoint() * a1 + a1.adjoint() * a0));
  };
  ProbabilityOperators e;
  e.e_r_plus = element(Side::Transmitted, Outcome::PlusN);
  e.e_r_minus = element(Side::Transmitted, Outcome::MinusN);
  e.e_l_plus = element(Side::Reflected, Outcome::PlusN);
  e.e_l_minus = element(Side::Reflected, Outcome::MinusN);
  e.omega = omega;
  return e;
}

ProbabilityOperators exact_povm(const SpinfulAmplitudes& s, const SpinPostSelection& spin) {
  const Matrix2c sp = scattering_matrix(s.plus);
  const Matrix2c sm = scattering_matrix(s.minus);
  auto element = [&](Side p, Outcome m) {
    const Vector2c& n = spin.state(m);
    const Matrix2c mm =
        (sp * n.dot(spin::plus_z()) + sm * n.dot(spin::minus_z())) / std::sqrt(2.0);
    const Matrix2c a = projector(p) * mm;
    return Matrix2c(a.adjoint() * a);
  };
  ProbabilityOperators e;
  e.e_r_plus = element(Side::Transmitted, Outcome::PlusN);
  e.e_r_minus = element(Side::Transmitted, Outcome::MinusN);
  e.e_l_plus = element(Side::Reflected, Outcome::PlusN);
  e.e_l_minus = element(Side::Reflected, Outcome::MinusN);
  e.omega = s.omega_probe;
  return e;
}

RotatedSpins rotated_spin_states(const ComplexTimes& tau, double omega) {
  const Vector2c px = spin::plus_x();
  const Vector2c mx = spin::minus_x();
  RotatedSpins r;
  r.s_r = px + 0.5 * omega * tau.tau_t * mx;
  r.s_l = px + 0.5 * omega * tau.tau_r_left * mx;
  r.s_r.normalize();
  r.s_l.normalize();
  r.precession_angle = omega * tau.tau_yt;
  r.tilt = omega * tau.tau_zt;
  return r;
}

Eigen::Vector3d bloch_vector(const Vector2c& v) {
  const double n = v.squaredNorm();
  const Complex c = std::conj(v(0)) * v(1);
  return Eigen::Vector3d(2.0 * c.real(), 2.0 * c.imag(), std::norm(v(0)) - std::norm(v(1))) / n;
}

}  // namespace ttclock
