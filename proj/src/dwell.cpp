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


#include "ttclock/dwell.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ttclock/errors.hpp"

namespace ttclock {

namespace {

template <class T>
T simpson_impl(std::span<const T> y, double h) {
  const std::size_t n = y.size() < 1 ? 0 : y.size() - 1;
  if (y.size() < 3) throw NumericalError("simpson: grid too coarse (fewer than 3 points)");
  std::size_t even_end = n;
  T tail{};
  if (n % 2 == 1) {
    even_end = n - 3;
    tail = 3.0 * h / 8.0 * (y[n - 3] + 3.0 * y[n - 2] + 3.0 * y[n - 1] + y[n]);
  }
  T sum{};
  if (even_end > 0) {
    T odd{}, even{};
    for (std::size_t i = 1; i < even_end; i += 2) odd += y[i];
    for (std::size_t i = 2; i < even_end; i += 2) even += y[i];
    sum = h / 3.0 * (y[0] + y[even_end] + 4.0 * odd + 2.0 * even);
  }
  return sum + tail;
}

const std::vector<Complex>& channel(const InteriorWave& w, Channel c) {
  return c == Channel::Left ? w.phi_l : w.phi_r;
}

double grid_step(const InteriorWave& w) {
  if (w.grid.size() < 3) throw NumericalError("dwell: grid too coarse (fewer than 3 points)");
  return (w.grid.back() - w.grid.front()) / static_cast<double>(w.grid.size() - 1);
}

}  // namespace

double simpson(std::span<const double> y, double h) { return simpson_impl(y, h); }
Complex simpson(std::span<const Complex> y, double h) { return simpson_impl(y, h); }

Complex barrier_overlap(const InteriorWave& w, Channel bra, Channel ket) {
  const double h = grid_step(w);
  const auto& a = channel(w, bra);
  const auto& b = channel(w, ket);
  std::vector<Complex> f(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) f[i] = std::conj(a[i]) * b[i];
  return simpson(std::span<const Complex>(f), h);
}

DwellMatrix dwell_matrix(const InteriorWave& w, const UnitSystem& units) {
  const double h = grid_step(w);
  const double flux = units.mass / (units.hbar * w.k);
  std::vector<double> ll(w.phi_l.size()), rr(w.phi_r.size());
  for (std::size_t i = 0; i < ll.size(); ++i) {
    ll[i] = std::norm(w.phi_l[i]);
    rr[i] = std::norm(w.phi_r[i]);
  }
  DwellMatrix c;
  c.k = w.k;
  c.c_ll = flux * simpson(std::span<const double>(ll), h);
  c.c_rr = flux * simpson(std::span<const double>(rr), h);
  c.c_rl = flux * barrier_overlap(w, Channel::Right, Channel::Left);
  return c;
}

DwellEigensystem dwell_eigensystem(const Hermitian2& op) {
  const double cll = op.e11;
  const double crr = op.e22;
  const Complex crl = op.e21;
  const double root = std::sqrt((crr - cll) * (crr - cll) + 4.0 * std::norm(crl));
  DwellEigensystem e;
  e.lambda_plus = 0.5 * (crr + cll + root);
  e.lambda_minus = 0.5 * (crr + cll - root);

  // Two equivalent unnormalized forms per eigenvalue; keep the better conditioned one.
  auto pick = [](Vector2c a, Vector2c b) {
    Vector2c v = a.norm() >= b.norm() ? a : b;
    return Vector2c(v / v.norm());
  };
  e.state_plus = pick(Vector2c(cll - crr + root, 2.0 * crl),
                      Vector2c(2.0 * std::conj(crl), crr - cll + root));
  e.state_minus = pick(Vector2c(2.0 * std::conj(crl), -(cll - crr + root)),
                       Vector2c(-(crr - cll + root), 2.0 * crl));
  if (root == 0.0) {
    e.state_plus = Vector2c(1.0, 0.0);
    e.state_minus = Vector2c(0.0, 1.0);
  }
  return e;
}

Hermitian2 squared_matrix(const DwellMatrix& c) {
  const double n = std::norm(c.c_rl);
  Hermitian2 s;
  s.e11 = c.c_ll * c.c_ll + n;
  s.e22 = c.c_rr * c.c_rr + n;
  s.e21 = c.c_rl * (c.c_ll + c.c_rr);
  return s;
}

double WavePacket::density(double k) const {
  const double u = (k - k_center) / k_sigma;
  return std::exp(-u * u) / (k_sigma * std::sqrt(std::numbers::pi));
}

void WavePacket::validate() const {
  if (!(k_sigma > 0.0) || !std::isfinite(k_sigma))
    throw ConfigError("wave_packet.k_sigma: must be > 0");
  if (!(k_center > 0.0) || !std::isfinite(k_center))
    throw ConfigError("wave_packet.k_center: must be > 0");
  const double tail = 0.5 * std::erfc(k_center / k_sigma);
  if (!(tail < 1e-12))
    throw ConfigError("wave_packet: packet extends below k=0 (tail mass " +
                      std::to_string(tail) + ")");
}

double wavepacket_dwell(const BarrierSpec& barrier, const WavePacket& packet,
                        const SolverOptions& options) {
  packet.validate();
  using boost::math::quadrature::gauss_kronrod;
  const double lo = std::max(packet.k_center - 6.0 * packet.k_sigma, 1e-6 * packet.k_center);
  const double hi = packet.k_center + 6.0 * packet.k_sigma;
  auto weight = [&](double k) { return packet.density(k); };
  auto integrand = [&](double k) {
    const auto w = interior_wavefunctions(barrier, k, options);
    return packet.density(k) * dwell_matrix(w, barrier.units).c_ll;
  };
  const double norm = gauss_kronrod<double, 31>::integrate(weight, lo, hi, 10, 1e-12);
  const double num = gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 10, 1e-10);
  return num / norm;
}

}  // namespace ttclock
