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


#include "ttclock/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ttclock/errors.hpp"

namespace ttclock {

std::string_view to_string(BarrierKind kind) {
  switch (kind) {
    case BarrierKind::Square: return "square";
    case BarrierKind::QuadraticSymmetric: return "quadratic";
    case BarrierKind::Trapezoid: return "trapezoid";
    case BarrierKind::Sampled: return "sampled";
  }
  return "unknown";
}

BarrierKind parse_barrier_kind(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "square") return BarrierKind::Square;
  if (s == "quadratic" || s == "quadraticsymmetric" || s == "quadratic_symmetric")
    return BarrierKind::QuadraticSymmetric;
  if (s == "trapezoid") return BarrierKind::Trapezoid;
  if (s == "sampled") return BarrierKind::Sampled;
  throw ConfigError("barrier.kind: unknown kind '" + std::string(name) + "'");
}

double BarrierSpec::k0() const { return std::sqrt(2.0 * units.mass * v0) / units.hbar; }

double BarrierSpec::max_potential() const {
  switch (kind) {
    case BarrierKind::Square: return v0;
    case BarrierKind::QuadraticSymmetric:
      return std::max(v0, v0 + quad_coeff * half_width() * half_width());
    case BarrierKind::Trapezoid: return std::max(v0, v0 + slope_total);
    case BarrierKind::Sampled: {
      double m = 0.0;
      for (const auto& s : samples) m = std::max(m, s.v);
      return m;
    }
  }
  return v0;
}

double BarrierSpec::min_potential() const {
  switch (kind) {
    case BarrierKind::Square: return v0;
    case BarrierKind::QuadraticSymmetric:
      return std::min(v0, v0 + quad_coeff * half_width() * half_width());
    case BarrierKind::Trapezoid: return std::min(v0, v0 + slope_total);
    case BarrierKind::Sampled: {
      double m = samples.empty() ? 0.0 : samples.front().v;
      for (const auto& s : samples) m = std::min(m, s.v);
      return m;
    }
  }
  return v0;
}

BarrierSpec make_barrier(BarrierKind kind, const BarrierParams& params, const UnitSystem& units) {
  units.validate();
  if (!(params.width > 0.0) || !std::isfinite(params.width))
    throw ConfigError("barrier.d: width must be > 0");
  if (!std::isfinite(params.v0) || params.v0 < 0.0)
    throw ConfigError("barrier.v0: must be >= 0 (wells are not supported)");

  BarrierSpec b;
  b.kind = kind;
  b.v0 = params.v0;
  b.width = params.width;
  b.units = units;

  switch (kind) {
    case BarrierKind::Square: break;
    case BarrierKind::QuadraticSymmetric:
      if (!std::isfinite(params.quad_coeff)) throw ConfigError("barrier.a: must be finite");
      b.quad_coeff = params.quad_coeff;
      break;
    case BarrierKind::Trapezoid:
      if (!std::isfinite(params.slope_total)) throw ConfigError("barrier.epsilon: must be finite");
      b.slope_total = params.slope_total;
      break;
    case BarrierKind::Sampled: {
      const auto& s = params.samples;
      if (s.empty()) throw ConfigError("barrier.samples: empty sample list");
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s[i].x) || !std::isfinite(s[i].v))
          throw ConfigError("barrier.samples: non-finite entry at index " + std::to_string(i));
        if (s[i].v < 0.0)
          throw ConfigError("barrier.samples: negative potential at index " + std::to_string(i));
        if (i > 0 && !(s[i].x > s[i - 1].x))
          throw ConfigError("barrier.samples: x must be strictly increasing (index " +
                            std::to_string(i) + ")");
      }
      const double a = 0.5 * params.width;
      const double slack = 1e-12 * params.width;
      if (s.front().x > -a + slack || s.back().x < a - slack)
        throw ConfigError("barrier.samples: samples must cover [-d/2, d/2]");
      b.samples = s;
      if (b.v0 == 0.0) b.v0 = b.max_potential();
      break;
    }
  }
  if (b.min_potential() < 0.0)
    throw ConfigError("barrier: potential is negative somewhere inside the barrier");
  return b;
}

namespace {

double sampled_value(const std::vector<SamplePoint>& s, double x) {
  // cell i spans the midpoints to its neighbours
  auto it = std::lower_bound(s.begin(), s.end(), x,
                             [](const SamplePoint& p, double v) { return p.x < v; });
  if (it == s.begin()) return s.front().v;
  if (it == s.end()) return s.back().v;
  auto prev = it - 1;
  const double mid = 0.5 * (prev->x + it->x);
  return x < mid ? prev->v : it->v;
}

}  // namespace

double evaluate(const BarrierSpec& b, double x, double spin_shift) {
  const double a = b.half_width();
  if (!(std::abs(x) <= a)) return 0.0;
  double v = 0.0;
  switch (b.kind) {
    case BarrierKind::Square: v = b.v0; break;
    case BarrierKind::QuadraticSymmetric: v = b.v0 + b.quad_coeff * x * x; break;
    case BarrierKind::Trapezoid: v = b.v0 + b.slope_total * (0.5 + x / b.width); break;
    case BarrierKind::Sampled: v = sampled_value(b.samples, x); break;
  }
  return v + spin_shift;
}

bool is_symmetric(const BarrierSpec& b) {
  switch (b.kind) {
    case BarrierKind::Square:
    case BarrierKind::QuadraticSymmetric: return true;
    case BarrierKind::Trapezoid: return b.slope_total == 0.0;
    case BarrierKind::Sampled: {
      const double tol = 1e-12 * std::max(1.0, b.max_potential());
      const int n = 4001;
      for (int i = 0; i < n; ++i) {
        const double x = -b.half_width() + b.width * (i + 0.5) / n;
        if (std::abs(evaluate(b, x) - evaluate(b, -x)) > tol) return false;
      }
      return true;
    }
  }
  return false;
}

BarrierSpec mirrored(const BarrierSpec& b) {
  BarrierSpec m = b;
  switch (b.kind) {
    case BarrierKind::Square:
    case BarrierKind::QuadraticSymmetric: break;
    case BarrierKind::Trapezoid:
      m.v0 = b.v0 + b.slope_total;
      m.slope_total = -b.slope_total;
      break;
    case BarrierKind::Sampled:
      m.samples.clear();
      for (auto it = b.samples.rbegin(); it != b.samples.rend(); ++it)
        m.samples.push_back({-it->x, it->v});
      break;
  }
  return m;
}

}  // namespace ttclock
