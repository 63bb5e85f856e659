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


#include "ttclock/pipeline.hpp"

#include "ttclock/errors.hpp"

namespace ttclock {

std::string_view to_string(PointStatus status) {
  switch (status) {
    case PointStatus::Ok: return "ok";
    case PointStatus::SingularContext: return "singular_context";
    case PointStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

PointAnalysis analyze_point(const BarrierSpec& barrier, double k, const SpinPostSelection& spin,
                            const PipelineOptions& options) {
  PointAnalysis p;
  p.k = k;
  p.spin = spin;
  p.context = detect_singular_context(spin, options.context_tolerance);
  p.amplitudes = solve_amplitudes(barrier, k, 0.0, options.solver);
  p.wave = interior_wavefunctions(barrier, k, options.solver);
  p.dwell = dwell_matrix(p.wave, barrier.units);
  p.eigen = dwell_eigensystem(p.dwell);
  p.squared = squared_matrix(p.dwell);

  const double probe =
      options.probe_omega > 0.0 ? options.probe_omega : default_probe_omega(barrier);
  p.omega = options.omega > 0.0 ? options.omega : probe;

  try {
    LarmorOptions lo;
    lo.probe_omega = probe;
    lo.solver = options.solver;
    p.times = complex_times(barrier, k, lo);
  } catch (const NumericalError& e) {
    p.times_status = PointStatus::NumericalFailure;
    p.times_error = e.what();
    p.cv_status = PointStatus::NumericalFailure;
    p.cv_error = std::string("Larmor times unavailable: ") + e.what();
    return p;
  }

  p.measurement = measurement_operators(p.amplitudes, *p.times, spin, p.omega);
  p.povm = povm_elements(*p.measurement, p.omega);
  p.transformed = transformed_operators(p.dwell, p.amplitudes, *p.times, spin);
  try {
    p.alpha = solve_cvs_linear(*p.transformed, spin, p.omega);
    p.alpha_closed = cvs_closed_form(*p.transformed, p.amplitudes, *p.times, spin, p.omega);
    p.beta = second_moment_cvs(p.squared, p.amplitudes, *p.times, spin, p.omega);
  } catch (const SingularContext& e) {
    p.alpha.reset();
    p.alpha_closed.reset();
    p.beta.reset();
    p.cv_status = e.kind() == ContextKind::Degenerate ? PointStatus::NumericalFailure
                                                      : PointStatus::SingularContext;
    p.cv_error = e.what();
  } catch (const NumericalError& e) {
    p.alpha.reset();
    p.alpha_closed.reset();
    p.beta.reset();
    p.cv_status = PointStatus::NumericalFailure;
    p.cv_error = e.what();
  }
  return p;
}

}  // namespace ttclock
