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

#include "ttclock/contextual.hpp"
#include "ttclock/dwell.hpp"
#include "ttclock/spin_meter.hpp"

namespace ttclock {

struct InitialSystemState {
  Complex amp_left{1.0, 0.0};
  Complex amp_right{0.0, 0.0};

  static InitialSystemState left_incoming() { return {{1.0, 0.0}, {0.0, 0.0}}; }
  static InitialSystemState right_incoming() { return {{0.0, 0.0}, {1.0, 0.0}}; }

  void validate() const;
  Vector2c vector() const { return Vector2c(amp_left, amp_right); }
  Matrix2c density() const;
};

struct OutcomeProbabilities {
  double r_plus = 0.0;
  double r_minus = 0.0;
  double l_plus = 0.0;
  double l_minus = 0.0;

  double at(Side p, Outcome m) const;
  double side(Side p) const;
  double total() const { return r_plus + r_minus + l_plus + l_minus; }
};

OutcomeProbabilities outcome_probabilities(const ProbabilityOperators& povm,
                                           const InitialSystemState& state);

// <psi|A|psi>
double expectation_direct(const Hermitian2& op, const InitialSystemState& state);

double expectation_via_cvs(const ContextualValues& cvs, const ProbabilityOperators& povm,
                           const InitialSystemState& state);

enum class Route { ProbabilityWeighted, ClosedForm };

struct ConditionedResult {
  double conditioned_avg = 0.0;
  Complex weak_value{0.0, 0.0};
  double disturbance = 0.0;
  double transmitted_prob = 0.0;
  Route route = Route::ProbabilityWeighted;
};

// sum_m alpha_{p,m} P_{p,m} / P_p
double conditioned_average(const ContextualValues& cvs, const ProbabilityOperators& povm,
                           const InitialSystemState& state, Side side = Side::Transmitted);

// Left-incoming closed form.
double conditioned_average_closed_form(const TransformedOperators& ops,
                                       const ScatteringAmplitudes& amps,
                                       const ComplexTimes& times,
                                       const ContextualValues& cvs,
                                       const SpinPostSelection& spin,
                                       Side side = Side::Transmitted);

// C_ll + (r_r/t) C_rl
Complex weak_value(const DwellMatrix& c, const ScatteringAmplitudes& amps);

// <f|T|psi>/<f|psi> with <f| the post-selected outgoing channel pulled back by S0.
Complex weak_value(const Hermitian2& op, const ScatteringAmplitudes& amps,
                   const InitialSystemState& state, Side side = Side::Transmitted);

// S0^dagger Pi_p S0
Matrix2c postselection_projector(const ScatteringAmplitudes& amps, Side side);

double disturbance(const MeasurementOperators& ops, const ContextualValues& cvs,
                   const InitialSystemState& state, Side side = Side::Transmitted);

ConditionedResult conditioned_result(const MeasurementOperators& ops,
                                     const ProbabilityOperators& povm,
                                     const ContextualValues& cvs,
                                     const TransformedOperators& transformed,
                                     const DwellMatrix& c, const ScatteringAmplitudes& amps,
                                     const ComplexTimes& times, const SpinPostSelection& spin,
                                     const InitialSystemState& state,
                                     Route route = Route::ProbabilityWeighted);

struct Moments {
  double second_moment = 0.0;
  double variance = 0.0;
  double uncertainty = 0.0;
};

Moments second_moment_and_uncertainty(const ContextualValues& beta,
                                      const ProbabilityOperators& povm,
                                      const InitialSystemState& state, double first_moment);

Complex steinberg_time(const BarrierSpec& barrier, const InteriorWave& wave,
                       const ScatteringAmplitudes& amps);

}  // namespace ttclock
