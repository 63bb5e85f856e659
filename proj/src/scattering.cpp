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


#include "ttclock/scattering.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ttclock/errors.hpp"
#include "internal.hpp"

namespace ttclock {

ScatteringAmplitudes make_amplitudes(double k, Complex t, Complex r_left, Complex r_right) {
  ScatteringAmplitudes a;
  a.k = k;
  a.t = t;
  a.r_left = r_left;
  a.r_right = r_right;
  a.T = std::norm(t);
  a.R = std::norm(r_left);
  a.phase_t = std::arg(t);
  a.phase_r_left = std::arg(r_left);
  a.phase_r_right = std::arg(r_right);
  return a;
}

namespace detail {

SegmentPropagator segment_propagator(double s, double h) {
  const double z = s * h * h;
  SegmentPropagator p;
  if (std::abs(z) < 1e-3) {
    const double even = 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0;
    const double odd = 1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0;
    p.c = even;
    p.sn = h * odd;
    p.qs = s * h * odd;
  } else if (s > 0.0) {
    const double q = std::sqrt(s);
    p.c = std::cos(q * h);
    p.sn = std::sin(q * h) / q;
    p.qs = q * std::sin(q * h);
  } else {
    const double q = std::sqrt(-s);
    p.c = std::cosh(q * h);
    p.sn = std::sinh(q * h) / q;
    p.qs = -q * std::sinh(q * h);
  }
  return p;
}

std::vector<double> slice_wavenumbers(const BarrierSpec& barrier, double k, double spin_shift,
                                      int slices) {
  const double h = barrier.width / slices;
  const double a = barrier.half_width();
  const double hb2 = barrier.units.hbar * barrier.units.hbar;
  const double energy = hb2 * k * k / (2.0 * barrier.units.mass);
  std::vector<double> s(slices);
  for (int j = 0; j < slices; ++j) {
    const double x = -a + (j + 0.5) * h;
    s[j] = 2.0 * barrier.units.mass * (energy - evaluate(barrier, x, spin_shift)) / hb2;
  }
  return s;
}

}  // namespace detail

namespace {

using detail::SegmentPropagator;

constexpr double kRescale = 1e150;

void check_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("k: wavenumber must be > 0");
}

// Total real propagator of (psi, psi') across the barrier, as scale * exp(log_scale).
struct TotalPropagator {
  Eigen::Matrix2d p = Eigen::Matrix2d::Identity();
  double log_scale = 0.0;
};

TotalPropagator total_propagator(const std::vector<double>& s, double h) {
  TotalPropagator tot;
  std::size_t j = 0;
  while (j < s.size()) {
    std::size_t run = 1;
    while (j + run < s.size() && s[j + run] == s[j]) ++run;
    const auto seg = detail::segment_propagator(s[j], h * static_cast<double>(run));
    Eigen::Matrix2d m;
    m << seg.c, seg.sn, -seg.qs, seg.c;
    tot.p = m * tot.p;
    const double big = tot.p.cwiseAbs().maxCoeff();
    if (big > kRescale) {
      tot.p /= big;
      tot.log_scale += std::log(big);
    }
    j += run;
  }
  return tot;
}

Matrix2c plane_wave_basis(double k, double x) {
  const Complex e = std::exp(kI * k * x);
  const Complex ei = std::conj(e);
  Matrix2c w;
  w << e, ei, kI * k * e, -kI * k * ei;
  return w;
}

ScatteringAmplitudes amplitudes_at(const BarrierSpec& barrier, double k, double spin_shift,
                                   int slices) {
  if (spin_shift == 0.0 && barrier.max_potential() == 0.0 && barrier.min_potential() == 0.0)
    return make_amplitudes(k, 1.0, 0.0, 0.0);
  const auto s = detail::slice_wavenumbers(barrier, k, spin_shift, slices);
  const auto tot = total_propagator(s, barrier.width / slices);
  const double a = barrier.half_width();
  const Matrix2c m =
      plane_wave_basis(k, a).inverse() * tot.p.cast<Complex>() * plane_wave_basis(k, -a);
  if (m(1, 1) == Complex(0.0, 0.0) || !std::isfinite(std::abs(m(1, 1))))
    throw NumericalError("scattering: degenerate transfer matrix");
  const Complex t = std::exp(-tot.log_scale) / m(1, 1);
  const Complex rl = -m(1, 0) / m(1, 1);
  const Complex rr = m(0, 1) / m(1, 1);
  return make_amplitudes(k, t, rl, rr);
}

}  // namespace

ScatteringAmplitudes solve_amplitudes(const BarrierSpec& barrier, double k, double spin_shift,
                                      const SolverOptions& options) {
  check_k(k);
  if (options.slices < 1) throw ConfigError("slices: must be >= 1");
  int n = options.slices;
  UnitarityResidual res;
  while (true) {
    auto amps = amplitudes_at(barrier, k, spin_shift, n);
    res = check_unitarity(amps);
    if (res.max() <= options.unitarity_tolerance) return amps;
    if (2 * n > options.max_slices) break;
    n *= 2;
  }
  std::ostringstream msg;
  msg << "scattering: unitarity residual " << res.max() << " exceeds tolerance "
      << options.unitarity_tolerance << " at " << n << " slices (k=" << k << ")";
  throw NumericalError(msg.str());
}

ScatteringAmplitudes analytic_square_amplitudes(double v0, double d, double k,
                                                const UnitSystem& units) {
  check_k(k);
  if (v0 < 0.0) throw ConfigError("v0: must be >= 0");
  if (!(d > 0.0)) throw ConfigError("d: must be > 0");
  if (v0 == 0.0) return make_amplitudes(k, 1.0, 0.0, 0.0);

  const double k0sq = 2.0 * units.mass * v0 / (units.hbar * units.hbar);
  const Complex kappa = std::sqrt(Complex(k0sq - k * k, 0.0));
  const Complex kd = kappa * d;
  // ch = cosh(kd), shc = sinh(kd)/kappa, ksh = kappa sinh(kd); all divided by `scale`
  Complex ch, shc, ksh;
  double log_scale = 0.0;
  if (std::abs(kd) < 1e-4) {
    const Complex z = kd * kd;
    ch = 1.0 + z / 2.0 + z * z / 24.0;
    shc = d * (1.0 + z / 6.0 + z * z / 120.0);
    ksh = kappa * kappa * shc;
  } else if (kd.real() > 20.0) {
    const Complex e = std::exp(-2.0 * kd);
    ch = 0.5 * (1.0 + e);
    const Complex sh = 0.5 * (1.0 - e);
    shc = sh / kappa;
    ksh = kappa * sh;
    log_scale = kd.real();
    const Complex phase = std::exp(Complex(0.0, kd.imag()));
    ch *= phase;
    shc *= phase;
    ksh *= phase;
  } else {
    ch = std::cosh(kd);
    shc = std::sinh(kd) / kappa;
    ksh = kappa * std::sinh(kd);
  }
  const Complex den = ch + 0.5 * kI * (ksh / k - k * shc);
  const Complex t = std::exp(-kI * k * d) * std::exp(-log_scale) / den;
  const Complex r = -0.5 * kI * (k * shc + ksh / k) * std::exp(-kI * k * d) / den;
  return make_amplitudes(k, t, r, r);
}

InteriorWave interior_wavefunctions(const BarrierSpec& barrier, double k,
                                    const SolverOptions& options) {
  check_k(k);
  const int n = options.slices;
  if (n < 2) throw ConfigError("slices: interior waves need >= 2 slices");
  const double a = barrier.half_width();
  const double h = barrier.width / n;
  const auto s = detail::slice_wavenumbers(barrier, k, 0.0, n);
  std::vector<SegmentPropagator> segs(n);
  for (int j = 0; j < n; ++j) segs[j] = detail::segment_propagator(s[j], h);

  const auto amps = amplitudes_at(barrier, k, 0.0, n);
  const Complex t = amps.t;
  const Complex edge = std::exp(kI * k * a);

  InteriorWave w;
  w.k = k;
  w.grid.resize(n + 1);
  w.phi_l.resize(n + 1);
  w.phi_r.resize(n + 1);
  for (int j = 0; j <= n; ++j) w.grid[j] = -a + j * h;
  w.grid[n] = a;

  // Both states are t times a solution fixed by its outgoing edge; propagate the
  // unit solution into the barrier with rescaling, then restore t.
  const double log_t = std::log(std::abs(t));
  const Complex phase_t = t / std::abs(t);
  auto assemble = [&](Complex u, double log_scale) {
    return phase_t * u * std::exp(log_scale + log_t);
  };

  {
    Complex u0 = edge, u1 = kI * k * edge;
    double log_scale = 0.0;
    w.phi_l[n] = t * edge;
    for (int j = n - 1; j >= 0; --j) {
      const auto& p = segs[j];
      const Complex v0 = p.c * u0 - p.sn * u1;
      const Complex v1 = p.qs * u0 + p.c * u1;
      u0 = v0;
      u1 = v1;
      const double big = std::max(std::abs(u0), std::abs(u1));
      if (big > kRescale) {
        u0 /= big;
        u1 /= big;
        log_scale += std::log(big);
      }
      w.phi_l[j] = assemble(u0, log_scale);
    }
  }
  {
    Complex u0 = edge, u1 = -kI * k * edge;
    double log_scale = 0.0;
    w.phi_r[0] = t * edge;
    for (int j = 0; j < n; ++j) {
      const auto& p = segs[j];
      const Complex v0 = p.c * u0 + p.sn * u1;
      const Complex v1 = -p.qs * u0 + p.c * u1;
      u0 = v0;
      u1 = v1;
      const double big = std::max(std::abs(u0), std::abs(u1));
      if (big > kRescale) {
        u0 /= big;
        u1 /= big;
        log_scale += std::log(big);
      }
      w.phi_r[j + 1] = assemble(u0, log_scale);
    }
  }
  for (int j = 0; j <= n; ++j) {
    if (!std::isfinite(std::abs(w.phi_l[j])) || !std::isfinite(std::abs(w.phi_r[j])))
      throw NumericalError("interior_wavefunctions: propagation overflow");
  }
  return w;
}

UnitarityResidual check_unitarity(const ScatteringAmplitudes& amps) {
  UnitarityResidual r;
  r.probability = std::abs(std::norm(amps.t) + std::norm(amps.r_left) - 1.0);
  r.cross = std::abs(amps.t * std::conj(amps.r_left) + std::conj(amps.t) * amps.r_right);
  return r;
}

namespace {

template <class Get>
void unwrap_member(std::span<ScatteringAmplitudes> scan, Get get) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 1; i < scan.size(); ++i) {
    double& cur = get(scan[i]);
    const double prev = get(scan[i - 1]);
    cur -= two_pi * std::round((cur - prev) / two_pi);
  }
}

}  // namespace

void unwrap_phases(std::span<ScatteringAmplitudes> scan) {
  unwrap_member(scan, [](ScatteringAmplitudes& a) -> double& { return a.phase_t; });
  unwrap_member(scan, [](ScatteringAmplitudes& a) -> double& { return a.phase_r_left; });
  unwrap_member(scan, [](ScatteringAmplitudes& a) -> double& { return a.phase_r_right; });
}

bool in_tunneling_regime(const BarrierSpec& barrier, double k) {
  const double vmin = barrier.min_potential();
  return k < std::sqrt(2.0 * barrier.units.mass * vmin) / barrier.units.hbar;
}

}  // namespace ttclock
