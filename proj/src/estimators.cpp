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


#include "ttclock/estimators.hpp"

#include <cmath>
#include <sstream>

#include "ttclock/errors.hpp"

namespace ttclock {

void InitialSystemState::validate() const {
  const double n = std::norm(amp_left) + std::norm(amp_right);
  if (!(std::abs(n - 1.0) < 1e-10))
    throw ConfigError("initial state: |alpha|^2 + |beta|^2 must equal 1");
}

Matrix2c InitialSystemState::density() const {
  const Vector2c v = vector();
  return v * v.adjoint();
}

double OutcomeProbabilities::at(Side p, Outcome m) const {
  if (p == Side::Transmitted) return m == Outcome::PlusN ? r_plus : r_minus;
  return m == Outcome::PlusN ? l_plus : l_minus;
}

double OutcomeProbabilities::side(Side p) const {
  return at(p, Outcome::PlusN) + at(p, Outcome::MinusN);
}

namespace {

double expect(const Matrix2c& e, const Vector2c& psi) { return psi.dot(e * psi).real(); }

constexpr Side kSides[] = {Side::Transmitted, Side::Reflected};
constexpr Outcome kOutcomes[] = {Outcome::PlusN, Outcome::MinusN};

}  // namespace

OutcomeProbabilities outcome_probabilities(const ProbabilityOperators& povm,
                                           const InitialSystemState& state) {
  const Vector2c psi = state.vector();
  return {expect(povm.e_r_plus, psi), expect(povm.e_r_minus, psi), expect(povm.e_l_plus, psi),
          expect(povm.e_l_minus, psi)};
}

double expectation_direct(const Hermitian2& op, const InitialSystemState& state) {
  return expect(op.matrix(), state.vector());
}

double expectation_via_cvs(const ContextualValues& cvs, const ProbabilityOperators& povm,
                           const InitialSystemState& state) {
  const auto p = outcome_probabilities(povm, state);
  double sum = 0.0;
  for (Side s : kSides)
    for (Outcome m : kOutcomes) sum += cvs.alpha(s, m) * p.at(s, m);
  return sum;
}

double conditioned_average(const ContextualValues& cvs, const ProbabilityOperators& povm,
                           const InitialSystemState& state, Side side) {
  const auto p = outcome_probabilities(povm, state);
  const double total = p.side(side);
  if (!(total > 1e-12)) {
    std::ostringstream msg;
    msg << "conditioned_average: post-selection probability " << total << " vanishes";
    throw NumericalError(msg.str());
  }
  double sum = 0.0;
  for (Outcome m : kOutcomes) sum += cvs.alpha(side, m) * p.at(side, m);
  return sum / total;
}

double conditioned_average_closed_form(const TransformedOperators& o,
                                       const ScatteringAmplitudes& a, const ComplexTimes& tau,
                                       const ContextualValues& cvs,
                                       const SpinPostSelection& spin, Side side) {
  if (side == Side::Transmitted)
    return o.t11 - a.R * (std::conj(tau.delta_tau) * spin.x1).real() * cvs.f_r;
  return o.t22 - a.T * (tau.delta_tau * spin.x1).real() * cvs.f_l;
}

Complex weak_value(const DwellMatrix& c, const ScatteringAmplitudes& a) {
  if (!(std::abs(a.t) > 1e-12))
    throw NumericalError("weak_value: |t| below 1e-12, amplification overflow");
  return c.c_ll + (a.r_right / a.t) * c.c_rl;
}

Complex weak_value(const Hermitian2& op, const ScatteringAmplitudes& a,
                   const InitialSystemState& state, Side side) {
  const int row = side == Side::Transmitted ? 0 : 1;
  const Eigen::RowVector2cd f = scattering_matrix(a).row(row);
  const Complex overlap = f * state.vector();
  if (!(std::abs(overlap) > 1e-12))
    throw NumericalError("weak_value: vanishing pre/post-selection overlap");
  const Complex num = f * op.matrix() * state.vector();
  return num / overlap;
}

Matrix2c postselection_projector(const ScatteringAmplitudes& a, Side side) {
  const Matrix2c s = scattering_matrix(a);
  return s.adjoint() * projector(side) * s;
}

double disturbance(const MeasurementOperators& ops, const ContextualValues& cvs,
                   const InitialSystemState& state, Side side) {
  const Matrix2c f = ops.s0.adjoint() * projector(side) * ops.s0;
  const Matrix2c rho = state.density();
  const double norm = (f * rho).trace().real();
  if (!(norm > 1e-12)) throw NumericalError("disturbance: post-selection probability vanishes");
  const Matrix2c s_dag = ops.s0.adjoint();
  double sum = 0.0;
  for (Side p : kSides) {
    for (Outcome m : kOutcomes) {
      // measurement operators pulled back to the incoming frame
      const Matrix2c k0 = s_dag * projector(p) * ops.m0(m);
      const Matrix2c k1 = s_dag * projector(p) * ops.m1(m);
      const Matrix2c c0 = k0.adjoint() * f - f * k0.adjoint();
      const Matrix2c c1 = f * k1 - k1 * f;
      const Matrix2c term = c0 * k0 * rho + ops.omega * (c0 * k1 * rho + k0.adjoint() * c1 * rho);
      sum += cvs.alpha(p, m) * term.trace().real();
    }
  }
  return sum / norm;
}

ConditionedResult conditioned_result(const MeasurementOperators& ops,
                                     const ProbabilityOperators& povm,
                                     const ContextualValues& cvs,
                                     const TransformedOperators& transformed,
                                     const DwellMatrix& c, const ScatteringAmplitudes& amps,
                                     const ComplexTimes& times, const SpinPostSelection& spin,
                                     const InitialSystemState& state, Route route) {
  ConditionedResult r;
  r.route = route;
  if (route == Route::ProbabilityWeighted) {
    r.conditioned_avg = conditioned_average(cvs, povm, state, Side::Transmitted);
  } else {
    r.conditioned_avg =
        conditioned_average_closed_form(transformed, amps, times, cvs, spin, Side::Transmitted);
  }
  r.weak_value = weak_value(c.elements(), amps, state, Side::Transmitted);
  r.disturbance = disturbance(ops, cvs, state, Side::Transmitted);
  r.transmitted_prob = outcome_probabilities(povm, state).side(Side::Transmitted);
  return r;
}

Moments second_moment_and_uncertainty(const ContextualValues& beta,
                                      const ProbabilityOperators& povm,
                                      const InitialSystemState& state, double first_moment) {
  Moments m;
  m.second_moment = expectation_via_cvs(beta, povm, state);
  m.variance = m.second_moment - first_moment * first_moment;
  const double tol = 1e-8 * std::max(1.0, std::abs(m.second_moment));
  if (m.variance < -tol) {
    std::ostringstream msg;
    msg << "second moment: negative variance " << m.variance << " (inconsistent inputs)";
    throw NumericalError(msg.str());
  }
  m.uncertainty = std::sqrt(std::max(m.variance, 0.0));
  return m;
}

Complex steinberg_time(const BarrierSpec& barrier, const InteriorWave& w,
                       const ScatteringAmplitudes& a) {
  if (!is_symmetric(barrier))
    throw ConfigError("steinberg_time: requires a symmetric barrier");
  if (!(std::abs(a.t) > 1e-12)) throw NumericalError("steinberg_time: |t| below 1e-12");
  if (w.grid.size() < 3) throw NumericalError("steinberg_time: grid too coarse");
  const double h = (w.grid.back() - w.grid.front()) / static_cast<double>(w.grid.size() - 1);
  std::vector<Complex> f(w.grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = w.phi_r[i] * w.phi_l[i];
  const double flux = barrier.units.mass / (barrier.units.hbar * w.k);
  return flux * simpson(std::span<const Complex>(f), h) / a.t;
}

}  // namespace ttclock
