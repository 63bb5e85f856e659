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


#include "ttclock/contextual.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ttclock {

Matrix2c conjugate_by_scattering(const ScatteringAmplitudes& amps, const Matrix2c& x) {
  const Matrix2c s = scattering_matrix(amps);
  return s * x * s.adjoint();
}

TransformedOperators transformed_operators(const Hermitian2& op,
                                           const ScatteringAmplitudes& a,
                                           const ComplexTimes& tau,
                                           const SpinPostSelection& spin) {
  const double T = a.T;
  const double R = a.R;
  const Complex t = a.t;
  const Complex rl = a.r_left;
  const Complex rr = a.r_right;
  const double cll = op.e11;
  const double crr = op.e22;
  const Complex crl = op.e21;
  const Complex clr = op.e12();
  const Complex x1 = spin.x1;

  TransformedOperators o;
  o.t11 = T * cll + R * crr + 2.0 * (std::conj(t) * rr * crl).real();
  o.t22 = R * cll + T * crr + 2.0 * (std::conj(rl) * t * crl).real();
  o.t12 = std::conj(rl) * t * cll + std::conj(rl) * rr * crl + T * clr + std::conj(t) * rr * crr;

  const Complex dl = std::conj(tau.tau_r_left - tau.tau_t);
  o.er11 = T * (tau.tau_t * x1).real() + R * (tau.tau_r_right * x1).real();
  o.er12 = -std::conj(rl) * t * dl * x1 / 2.0;
  o.el12 = std::conj(rl) * t * dl * std::conj(x1) / 2.0;
  o.el22 = T * (tau.tau_t * x1).real() + R * (tau.tau_r_left * x1).real();
  return o;
}

ContextClass detect_singular_context(const SpinPostSelection& spin, double tol) {
  const double re = std::abs(spin.x1.real());
  const double im = std::abs(spin.x1.imag());
  ContextClass c;
  c.score = re * im;
  if (re < tol && im < tol)
    c.kind = ContextKind::NearSingular;
  else if (im < tol)
    c.kind = ContextKind::XZPlane;
  else if (re < tol)
    c.kind = ContextKind::XYPlane;
  else if (c.score < tol * tol)
    c.kind = ContextKind::NearSingular;
  else
    c.kind = ContextKind::Regular;
  return c;
}

double ContextualValues::alpha(Side p, Outcome m) const {
  if (p == Side::Transmitted) return m == Outcome::PlusN ? alpha_r_plus : alpha_r_minus;
  return m == Outcome::PlusN ? alpha_l_plus : alpha_l_minus;
}

ContextualValues ContextualValues::from_poles(double alpha0_r, double alpha0_l,
                                              double alpha1_r, double alpha1_l,
                                              const SpinPostSelection& spin, double omega) {
  ContextualValues c;
  c.alpha0_r = alpha0_r;
  c.alpha0_l = alpha0_l;
  c.alpha1_r = alpha1_r;
  c.alpha1_l = alpha1_l;
  c.omega = omega;
  c.alpha_r_plus = alpha0_r + alpha1_r / (omega * spin.x0_plus);
  c.alpha_r_minus = alpha0_r - alpha1_r / (omega * spin.x0_minus);
  c.alpha_l_plus = alpha0_l + alpha1_l / (omega * spin.x0_plus);
  c.alpha_l_minus = alpha0_l - alpha1_l / (omega * spin.x0_minus);
  const double x00 = spin.x0_plus * spin.x0_minus;
  c.f_r = -alpha1_r / x00;
  c.f_l = alpha1_l / x00;
  return c;
}

namespace {

void require_regular(const SpinPostSelection& spin) {
  const auto ctx = detect_singular_context(spin);
  if (ctx.kind == ContextKind::Regular) return;
  std::ostringstream msg;
  msg << "singular measurement context (" << to_string(ctx.kind) << "): x1 = " << spin.x1.real()
      << (spin.x1.imag() < 0 ? " - " : " + ") << std::abs(spin.x1.imag()) << "i";
  if (ctx.kind == ContextKind::XZPlane)
    msg << "; n lies in the x-z plane, only amplitude information survives";
  else if (ctx.kind == ContextKind::XYPlane)
    msg << "; n lies in the x-y plane, only phase information survives";
  throw SingularContext(ctx.kind, msg.str());
}

void require_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("omega: must be > 0");
}

Eigen::Matrix4d system_matrix(const TransformedOperators& o) {
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  a(0, 0) = 1.0;
  a(0, 2) = o.er11;
  a(1, 1) = 1.0;
  a(1, 3) = o.el22;
  a(2, 2) = o.er12.real();
  a(2, 3) = o.el12.real();
  a(3, 2) = o.er12.imag();
  a(3, 3) = o.el12.imag();
  return a;
}

double condition_number(const Eigen::Matrix4d& a) {
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(a);
  const auto& sv = svd.singularValues();
  return sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
}

}  // namespace

ContextualValues solve_cvs_linear(const TransformedOperators& o, const SpinPostSelection& spin,
                                  double omega) {
  require_omega(omega);
  require_regular(spin);
  const double scale = std::max({std::abs(o.t11), std::abs(o.t22), std::abs(o.t12),
                                 std::abs(o.er11), std::abs(o.el22)});
  const double det = o.er12.real() * o.el12.imag() - o.el12.real() * o.er12.imag();
  if (!(std::abs(det) > 1e-26 * scale * scale) || !std::isfinite(det))
    throw SingularContext(ContextKind::Degenerate,
                          "contextual values: degenerate system (no reflection or no "
                          "transmission at this k)");
  const Eigen::Matrix4d a = system_matrix(o);
  const Eigen::Vector4d b(o.t11, o.t22, o.t12.real(), o.t12.imag());
  const Eigen::Vector4d x = a.partialPivLu().solve(b);
  const double x00 = spin.x0_plus * spin.x0_minus;
  auto c = ContextualValues::from_poles(x(0), x(1), x(2) * x00, x(3) * x00, spin, omega);
  c.condition_number = condition_number(a);
  return c;
}

ContextualValues cvs_closed_form(const TransformedOperators& o, const ScatteringAmplitudes& a,
                                 const ComplexTimes& tau, const SpinPostSelection& spin,
                                 double omega) {
  require_omega(omega);
  require_regular(spin);
  const Complex x1 = spin.x1;
  const Complex dt = tau.delta_tau;
  const double den = a.R * a.T * std::norm(dt) * x1.real() * x1.imag();
  const double f_r = (o.t12 * a.t * std::conj(a.r_right) * dt * x1).imag() / den;
  const double f_l = (o.t12 * std::conj(a.t) * a.r_left * dt * std::conj(x1)).imag() / den;
  if (den == 0.0 || !std::isfinite(f_r) || !std::isfinite(f_l))
    throw SingularContext(ContextKind::Degenerate,
                          "contextual values: closed-form denominator underflow");
  const double x00 = spin.x0_plus * spin.x0_minus;
  const double a0r = o.t11 + ((a.T * tau.tau_t + a.R * tau.tau_r_right) * x1).real() * f_r;
  const double a0l = o.t22 - ((a.T * tau.tau_t + a.R * tau.tau_r_left) * x1).real() * f_l;
  auto c = ContextualValues::from_poles(a0r, a0l, -x00 * f_r, x00 * f_l, spin, omega);
  c.f_r = f_r;
  c.f_l = f_l;
  c.condition_number = condition_number(system_matrix(o));
  return c;
}

ContextualValues second_moment_cvs(const Hermitian2& squared, const ScatteringAmplitudes& amps,
                                   const ComplexTimes& times, const SpinPostSelection& spin,
                                   double omega) {
  return solve_cvs_linear(transformed_operators(squared, amps, times, spin), spin, omega);
}

}  // namespace ttclock
