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


#include "ttclock/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ttclock/errors.hpp"
#include "internal.hpp"

namespace ttclock {

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Matrix2c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

IdentityReport make_report(std::string name, double k, Complex lhs, Complex rhs,
                           double tolerance) {
  IdentityReport r;
  r.name = std::move(name);
  r.k = k;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  r.tolerance = tolerance;
  r.passed = std::isfinite(r.abs_residual) && r.abs_residual <= tolerance;
  return r;
}

IdentityReport skipped_report(std::string name, double k, std::string reason) {
  IdentityReport r;
  r.name = std::move(name);
  r.k = k;
  r.skipped = true;
  r.passed = true;
  r.reason = std::move(reason);
  return r;
}

IdentityReport unitarity_report(const ScatteringAmplitudes& a, double tolerance) {
  const auto res = check_unitarity(a);
  const Complex lhs(std::norm(a.t) + std::norm(a.r_left), res.cross);
  return make_report("unitarity", a.k, lhs, Complex(1.0, 0.0), tolerance);
}

AmplitudeDerivatives amplitude_k_derivatives(const BarrierSpec& barrier, double k,
                                             const SolverOptions& options) {
  const double h = 1e-5 * k;
  ScatteringAmplitudes s[4];
  const double offsets[4] = {-2.0, -1.0, 1.0, 2.0};
  for (int i = 0; i < 4; ++i) s[i] = solve_amplitudes(barrier, k + offsets[i] * h, 0.0, options);
  auto d = [&](auto get) {
    return (get(s[0]) - 8.0 * get(s[1]) + 8.0 * get(s[2]) - get(s[3])) / (12.0 * h);
  };
  return {d([](const ScatteringAmplitudes& a) { return a.t; }),
          d([](const ScatteringAmplitudes& a) { return a.r_left; }),
          d([](const ScatteringAmplitudes& a) { return a.r_right; })};
}

IdentityReport normalization_identity(const BarrierSpec& barrier, double k,
                                      const SolverOptions& options, double tolerance) {
  const auto w = interior_wavefunctions(barrier, k, options);
  const auto a = solve_amplitudes(barrier, k, 0.0, options);
  const auto der = amplitude_k_derivatives(barrier, k, options);
  const double edge = barrier.half_width();
  const Complex lhs = barrier_overlap(w, Channel::Left, Channel::Left) / (2.0 * kPi);
  const Complex e2 = std::exp(2.0 * kI * k * edge);
  const Complex rhs = barrier.width / (2.0 * kPi) +
                      (a.r_left * e2 - std::conj(a.r_left) * std::conj(e2)) / (4.0 * kPi * kI * k) -
                      kI / (2.0 * kPi) *
                          (std::conj(a.r_left) * der.dr_left + std::conj(a.t) * der.dt);
  return make_report("normalization_identity", k, lhs, rhs, tolerance);
}

IdentityReport orthogonality_identity(const BarrierSpec& barrier, double k,
                                      const SolverOptions& options, double tolerance) {
  const auto w = interior_wavefunctions(barrier, k, options);
  const auto a = solve_amplitudes(barrier, k, 0.0, options);
  const auto der = amplitude_k_derivatives(barrier, k, options);
  const double edge = barrier.half_width();
  const Complex lhs = barrier_overlap(w, Channel::Left, Channel::Right) / (2.0 * kPi);
  const Complex e2 = std::exp(2.0 * kI * k * edge);
  const Complex rhs =
      -kI / (2.0 * kPi) * (std::conj(a.r_left) * der.dt + std::conj(a.t) * der.dr_right) +
      kI / (4.0 * kPi * k) * (std::conj(a.t) * std::conj(e2) - a.t * e2);
  return make_report("orthogonality_identity", k, lhs, rhs, tolerance);
}

std::vector<IdentityReport> point_identities(const BarrierSpec& barrier, const PointAnalysis& p,
                                             const SolverOptions& options) {
  std::vector<IdentityReport> out;
  const double k = p.k;
  const auto& a = p.amplitudes;
  const auto& c = p.dwell;

  out.push_back(unitarity_report(a));

  {
    const auto m = solve_amplitudes(mirrored(barrier), k, 0.0, options);
    out.push_back(make_report("reciprocity", k, a.t, m.t, 1e-10 * std::max(1.0, std::abs(a.t))));
  }
  {
    const double flux = barrier.units.mass / (barrier.units.hbar * k);
    const Complex lr = flux * barrier_overlap(p.wave, Channel::Left, Channel::Right);
    out.push_back(make_report("hermiticity", k, lr, std::conj(c.c_rl),
                              1e-10 * std::max({1.0, c.c_ll, c.c_rr})));
  }

  const std::string no_times = "Larmor times unavailable: " + p.times_error;
  if (p.times) {
    const auto& tau = *p.times;
    if (is_symmetric(barrier)) {
      out.push_back(make_report("dwell_larmor.c_ll_tau_yt", k, c.c_ll, tau.tau_yt,
                                1e-4 * std::abs(c.c_ll)));
    } else {
      out.push_back(skipped_report("dwell_larmor.c_ll_tau_yt", k, "requires a symmetric barrier"));
    }
    if (barrier.kind == BarrierKind::Square) {
      const Complex rhs = std::sqrt(a.T / a.R) * tau.tau_zt;
      out.push_back(make_report("dwell_larmor.c_rl_tau_zt", k, c.c_rl, rhs,
                                1e-4 * std::abs(c.c_rl)));
    } else {
      out.push_back(skipped_report("dwell_larmor.c_rl_tau_zt", k, "requires a square barrier"));
    }
    out.push_back(make_report("delta_tau_conjugation", k, tau.delta_tau,
                              std::conj(tau.tau_t - tau.tau_r_right), 1e-8));
  } else {
    out.push_back(skipped_report("dwell_larmor.c_ll_tau_yt", k, no_times));
    out.push_back(skipped_report("dwell_larmor.c_rl_tau_zt", k, no_times));
    out.push_back(skipped_report("delta_tau_conjugation", k, no_times));
  }

  const char* cv_checks[] = {"cv_decomposition",     "cv_dual_route",   "sum_rule",
                             "conditioned_route",    "disturbance_route",
                             "second_moment_eigen"};
  if (p.has_cvs() && p.alpha_closed) {
    const auto& alpha = *p.alpha;
    const auto& povm = *p.povm;
    const auto left = InitialSystemState::left_incoming();
    const Side sides[] = {Side::Transmitted, Side::Reflected};
    const Outcome outcomes[] = {Outcome::PlusN, Outcome::MinusN};

    Matrix2c recon = Matrix2c::Zero();
    for (Side s : sides)
      for (Outcome m : outcomes) recon += alpha.alpha(s, m) * povm.element(s, m);
    const Matrix2c td = c.matrix();
    out.push_back(make_report("cv_decomposition", k, max_abs(recon - td), 0.0,
                              1e-8 * max_abs(td)));

    double diff = 0.0, scale = 0.0;
    for (Side s : sides) {
      for (Outcome m : outcomes) {
        diff = std::max(diff, std::abs(alpha.alpha(s, m) - p.alpha_closed->alpha(s, m)));
        scale = std::max(scale, std::abs(alpha.alpha(s, m)));
      }
    }
    out.push_back(make_report("cv_dual_route", k, diff / scale, 0.0, 1e-8));

    try {
      const double ct = conditioned_average(alpha, povm, left, Side::Transmitted);
      const double cr = conditioned_average(alpha, povm, left, Side::Reflected);
      out.push_back(make_report("sum_rule", k, a.T * ct + a.R * cr, c.c_ll, 1e-9));
      const double closed = conditioned_average_closed_form(*p.transformed, a, *p.times, alpha,
                                                            p.spin, Side::Transmitted);
      out.push_back(make_report("conditioned_route", k, ct, closed, 1e-9));
      const double dist = disturbance(*p.measurement, alpha, left, Side::Transmitted);
      const Complex tw = weak_value(c, a);
      out.push_back(make_report("disturbance_route", k, dist, ct - tw.real(), 1e-9));
    } catch (const NumericalError& e) {
      for (const char* name : {"sum_rule", "conditioned_route", "disturbance_route"})
        out.push_back(skipped_report(name, k, e.what()));
    }

    const double second = expectation_via_cvs(*p.beta, povm, left);
    const double wp = std::norm(p.eigen.state_plus(0));
    const double wm = std::norm(p.eigen.state_minus(0));
    const double spectral = wp * p.eigen.lambda_plus * p.eigen.lambda_plus +
                            wm * p.eigen.lambda_minus * p.eigen.lambda_minus;
    out.push_back(make_report("second_moment_eigen", k, second, spectral,
                              1e-6 * std::max(1.0, std::abs(spectral))));
  } else {
    const std::string reason =
        p.cv_error.empty() ? std::string("contextual values unavailable") : p.cv_error;
    for (const char* name : cv_checks) out.push_back(skipped_report(name, k, reason));
  }

  out.push_back(normalization_identity(barrier, k, options));
  out.push_back(orthogonality_identity(barrier, k, options));
  return out;
}

std::vector<IdentityReport> run_all_identities(const BarrierSpec& barrier,
                                               const std::vector<double>& k_grid,
                                               const SpinPostSelection& spin,
                                               const PipelineOptions& options) {
  std::vector<std::vector<IdentityReport>> per_k(k_grid.size());
  detail::parallel_for(k_grid.size(), [&](std::size_t i) {
    try {
      const auto p = analyze_point(barrier, k_grid[i], spin, options);
      per_k[i] = point_identities(barrier, p, options.solver);
    } catch (const Error& e) {
      IdentityReport r;
      r.name = "solve";
      r.k = k_grid[i];
      r.abs_residual = std::numeric_limits<double>::infinity();
      r.passed = false;
      r.reason = e.what();
      per_k[i] = {r};
    }
  });
  std::vector<IdentityReport> out;
  for (auto& v : per_k) out.insert(out.end(), v.begin(), v.end());
  return out;
}

bool all_passed(const std::vector<IdentityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const IdentityReport& r) { return r.skipped || r.passed; });
}

}  // namespace ttclock
