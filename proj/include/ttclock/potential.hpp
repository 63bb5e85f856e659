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

#include <string_view>
#include <vector>

#include "ttclock/types.hpp"

namespace ttclock {

enum class BarrierKind { Square, QuadraticSymmetric, Trapezoid, Sampled };

std::string_view to_string(BarrierKind kind);
BarrierKind parse_barrier_kind(std::string_view name);

struct SamplePoint {
  double x = 0.0;
  double v = 0.0;
};

struct BarrierParams {
  double v0 = 0.0;
  double width = 1.0;
  double quad_coeff = 0.0;   // a
  double slope_total = 0.0;  // epsilon
  std::vector<SamplePoint> samples;
};

struct BarrierSpec {
  BarrierKind kind = BarrierKind::Square;
  double v0 = 0.0;
  double quad_coeff = 0.0;
  double slope_total = 0.0;
  double width = 1.0;
  std::vector<SamplePoint> samples;
  UnitSystem units;

  double half_width() const { return 0.5 * width; }
  // sqrt(2 m V0)/hbar
  double k0() const;
  double max_potential() const;
  double min_potential() const;
};

BarrierSpec make_barrier(BarrierKind kind, const BarrierParams& params,
                         const UnitSystem& units = {});

double evaluate(const BarrierSpec& barrier, double x, double spin_shift = 0.0);

bool is_symmetric(const BarrierSpec& barrier);

// V(-x).
BarrierSpec mirrored(const BarrierSpec& barrier);

}  // namespace ttclock
