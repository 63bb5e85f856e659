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

#include "ttclock/dwell.hpp"
#include "ttclock/errors.hpp"
#include "ttclock/larmor.hpp"
#include "ttclock/scattering.hpp"
#include "ttclock/spin_meter.hpp"

namespace ttclock {

struct TransformedOperators {
  double t11 = 0.0;
  double t22 = 0.0;
  Complex t12{0.0, 0.0};
  double er11 = 0.0;
  double el22 = 0.0;
  Complex er12{0.0, 0.0};
  Complex el12{0.0, 0.0};

  Complex t21() const { return std::conj(t12); }
};

// S0 X S0^dagger
Matrix2c conjugate_by_scattering(const ScatteringAmplitudes& amps, const Matrix2c& x);

TransformedOperators transformed_operators(const Hermitian2& op,
                                           const ScatteringAmplitudes& amps,
                                           const ComplexTimes& times,
                                           const SpinPostSelection& spin);
inline TransformedOperators transformed_operators(const DwellMatrix& c,
                                                  const ScatteringAmplitudes& amps,
                                                  const ComplexTimes& times,
                                                  const SpinPostSelection& spin) {
  return transformed_operators(c.elements(), amps, times, spin);
}

struct ContextClass {
  ContextKind kind = ContextKind::Regular;
  double score = 0.0;  // |Re x1 * Im x1|
};

ContextClass detect_singular_context(const SpinPostSelection& spin, double tol = 1e-9);

struct ContextualValues {
  double alpha_r_plus = 0.0;
  double alpha_r_minus = 0.0;
  double alpha_l_plus = 0.0;
  double alpha_l_minus = 0.0;
  double alpha0_r = 0.0;
  double alpha0_l = 0.0;
  double alpha1_r = 0.0;
  double alpha1_l = 0.0;
  double f_r = 0.0;
  double f_l = 0.0;
  double omega = 0.0;
  double condition_number = 0.0;

  double alpha(Side p, Outcome m) const;

  static ContextualValues from_poles(double alpha0_r, double alpha0_l, double alpha1_r,
                                     double alpha1_l, const SpinPostSelection& spin,
                                     double omega);
};

ContextualValues solve_cvs_linear(const TransformedOperators& ops,
                                  const SpinPostSelection& spin, double omega);

ContextualValues cvs_closed_form(const TransformedOperators& ops,
                                 const ScatteringAmplitudes& amps,
                                 const ComplexTimes& times,
                                 const SpinPostSelection& spin, double omega);

// beta values: same solve with the squared operator in place of T_d.
ContextualValues second_moment_cvs(const Hermitian2& squared,
                                   const ScatteringAmplitudes& amps,
                                   const ComplexTimes& times,
                                   const SpinPostSelection& spin, double omega);

}  // namespace ttclock
