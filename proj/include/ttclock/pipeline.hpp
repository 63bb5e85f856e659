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

#include <optional>
#include <string>

#include "ttclock/contextual.hpp"
#include "ttclock/dwell.hpp"
#include "ttclock/estimators.hpp"
#include "ttclock/larmor.hpp"
#include "ttclock/scattering.hpp"
#include "ttclock/spin_meter.hpp"

namespace ttclock {

struct PipelineOptions {
  SolverOptions solver;
  double probe_omega = 0.0;  // <= 0: default
  double omega = 0.0;        // working omega for the CVs; <= 0: probe omega
  double context_tolerance = 1e-9;
};

enum class PointStatus { Ok, SingularContext, NumericalFailure };

std::string_view to_string(PointStatus status);

// Everything the estimators need at one k, with failures captured rather than thrown.
struct PointAnalysis {
  double k = 0.0;
  double omega = 0.0;
  ScatteringAmplitudes amplitudes;
  InteriorWave wave;
  DwellMatrix dwell;
  DwellEigensystem eigen;
  Hermitian2 squared;
  SpinPostSelection spin;
  ContextClass context;

  std::optional<ComplexTimes> times;
  std::optional<MeasurementOperators> measurement;
  std::optional<ProbabilityOperators> povm;
  std::optional<TransformedOperators> transformed;
  std::optional<ContextualValues> alpha;
  std::optional<ContextualValues> alpha_closed;
  std::optional<ContextualValues> beta;

  PointStatus times_status = PointStatus::Ok;
  std::string times_error;
  PointStatus cv_status = PointStatus::Ok;
  std::string cv_error;

  bool has_cvs() const { return alpha.has_value() && beta.has_value(); }
};

// Throws only when the spinless solve itself fails.
PointAnalysis analyze_point(const BarrierSpec& barrier, double k, const SpinPostSelection& spin,
                            const PipelineOptions& options = {});

}  // namespace ttclock
