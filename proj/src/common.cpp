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


#include <cmath>

#include "ttclock/errors.hpp"
#include "ttclock/types.hpp"

namespace ttclock {

void UnitSystem::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ConfigError("units.hbar: must be > 0");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ConfigError("units.mass: must be > 0");
}

Matrix2c Hermitian2::matrix() const {
  Matrix2c m;
  m << Complex(e11, 0.0), e12(), e21, Complex(e22, 0.0);
  return m;
}

Hermitian2 Hermitian2::from_matrix(const Matrix2c& m) {
  return {m(0, 0).real(), m(1, 1).real(), 0.5 * (m(1, 0) + std::conj(m(0, 1)))};
}

std::string_view to_string(ContextKind kind) {
  switch (kind) {
    case ContextKind::Regular: return "regular";
    case ContextKind::XZPlane: return "xz_plane";
    case ContextKind::XYPlane: return "xy_plane";
    case ContextKind::NearSingular: return "near_singular";
    case ContextKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

}  // namespace ttclock
