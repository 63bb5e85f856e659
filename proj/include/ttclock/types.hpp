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

#include <complex>

#include <Eigen/Dense>

namespace ttclock {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

inline constexpr Complex kI{0.0, 1.0};

struct UnitSystem {
  double hbar = 1.0;
  double mass = 0.5;

  void validate() const;
};

// Hermitian 2x2 matrix stored as its independent elements.
// Basis ordering is {|k_l>, |k_r>}: e11 <-> (l,l), e22 <-> (r,r), e21 <-> (r,l).
struct Hermitian2 {
  double e11 = 0.0;
  double e22 = 0.0;
  Complex e21{0.0, 0.0};

  Complex e12() const { return std::conj(e21); }
  Matrix2c matrix() const;
  static Hermitian2 from_matrix(const Matrix2c& m);
};

}  // namespace ttclock
