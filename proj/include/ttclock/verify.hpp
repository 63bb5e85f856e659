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

#include <string>
#include <vector>

#include "ttclock/pipeline.hpp"
#include "ttclock/potential.hpp"
#include "ttclock/scattering.hpp"

namespace ttclock {

struct IdentityReport {
  std::string name;
  double k = 0.0;
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool skipped = false;
  std::string reason;
};

IdentityReport make_report(std::string name, double k, Complex lhs, Complex rhs,
                           double tolerance);
IdentityReport skipped_report(std::string name, double k, std::string reason);

IdentityReport unitarity_report(const ScatteringAmplitudes& amps, double tolerance = 1e-8);

IdentityReport normalization_identity(const BarrierSpec& barrier, double k,
                                      const SolverOptions& options = {},
                                      double tolerance = 1e-6);

IdentityReport orthogonality_identity(const BarrierSpec& barrier, double k,
                                      const SolverOptions& options = {},
                                      double tolerance = 1e-6);

// 5-point central difference with step 1e-5 k.
struct AmplitudeDerivatives {
  Complex dt;
  Complex dr_left;
  Complex dr_right;
};
AmplitudeDerivatives amplitude_k_derivatives(const BarrierSpec& barrier, double k,
                                             const SolverOptions& options = {});

std::vector<IdentityReport> point_identities(const BarrierSpec& barrier,
                                             const PointAnalysis& point,
                                             const SolverOptions& options = {});

std::vector<IdentityReport> run_all_identities(const BarrierSpec& barrier,
                                               const std::vector<double>& k_grid,
                                               const SpinPostSelection& spin,
                                               const PipelineOptions& options = {});

bool all_passed(const std::vector<IdentityReport>& reports);

}  // namespace ttclock
