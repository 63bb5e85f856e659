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


#include "ttclock/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>

#include "ttclock/errors.hpp"
#include "ttclock/pipeline.hpp"
#include "internal.hpp"

namespace ttclock {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

unsigned worker_count() { return detail::thread_count(); }

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

SweepConfig default_config() {
  SweepConfig c;
  c.kind = BarrierKind::Square;
  c.v0 = 9.0 * kPi * kPi;
  c.width = 1.0;
  c.theta = kPi / 2.0 - kPi / 8.0;
  c.phi = kPi / 4.0;
  return c;
}

std::vector<std::string> figure_names() {
  return {"fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c"};
}

SweepConfig figure_preset(std::string_view name) {
  SweepConfig c = default_config();
  const double k0sq = 2.0 * c.units.mass * c.v0 / (c.units.hbar * c.units.hbar);
  const std::vector<std::string> fig2 = {"wl_alpha_r_plus", "wl_alpha_r_minus", "wl_alpha_l_plus",
                                         "wl_alpha_l_minus"};
  const std::vector<std::string> fig3 = {"tau_d", "weak_re", "cond_avg", "disturbance"};
  if (name == "fig2a") {
    c.outputs = fig2;
  } else if (name == "fig2b") {
    c.kind = BarrierKind::QuadraticSymmetric;
    c.quad_coeff = k0sq / (c.width * c.width);
    c.outputs = fig2;
  } else if (name == "fig2c") {
    c.kind = BarrierKind::Trapezoid;
    c.slope_total = 0.5 * k0sq;
    c.outputs = fig2;
  } else if (name == "fig3a") {
    c.outputs = fig3;
  } else if (name == "fig3b") {
    c.theta = kPi / 2.0 - kPi / 200.0;
    c.outputs = fig3;
  } else if (name == "fig3c") {
    c.kind = BarrierKind::QuadraticSymmetric;
    c.quad_coeff = k0sq / (c.width * c.width);
    c.outputs = fig3;
  } else {
    throw ConfigError("figure: unknown preset '" + std::string(name) +
                      "' (expected fig2a, fig2b, fig2c, fig3a, fig3b or fig3c)");
  }
  return c;
}

namespace {

double number_field(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

void check_keys(const nlohmann::json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) throw ConfigError((path.empty() ? "" : path + ".") + item.key() + ": unknown field");
  }
}

}  // namespace

SweepConfig config_from_json(const nlohmann::json& doc, SweepConfig c) {
  check_keys(doc, "", {"barrier", "units", "k_grid", "spin", "omega", "probe_omega", "slices",
                       "outputs", "format", "seed"});
  if (doc.contains("barrier")) {
    const auto& b = doc["barrier"];
    check_keys(b, "barrier", {"kind", "v0", "d", "a", "epsilon", "samples"});
    if (b.contains("kind")) {
      if (!b["kind"].is_string()) throw ConfigError("barrier.kind: expected a string");
      c.kind = parse_barrier_kind(b["kind"].get<std::string>());
    }
    if (b.contains("v0")) c.v0 = number_field(b["v0"], "barrier.v0");
    if (b.contains("d")) c.width = number_field(b["d"], "barrier.d");
    if (b.contains("a")) c.quad_coeff = number_field(b["a"], "barrier.a");
    if (b.contains("epsilon")) c.slope_total = number_field(b["epsilon"], "barrier.epsilon");
    if (b.contains("samples")) {
      const auto& s = b["samples"];
      if (!s.is_array()) throw ConfigError("barrier.samples: expected an array of [x, V] pairs");
      c.samples.clear();
      for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string path = "barrier.samples[" + std::to_string(i) + "]";
        if (!s[i].is_array() || s[i].size() != 2) throw ConfigError(path + ": expected [x, V]");
        c.samples.push_back({number_field(s[i][0], path), number_field(s[i][1], path)});
      }
    }
  }
  if (doc.contains("units")) {
    const auto& u = doc["units"];
    check_keys(u, "units", {"hbar", "mass"});
    if (u.contains("hbar")) c.units.hbar = number_field(u["hbar"], "units.hbar");
    if (u.contains("mass")) c.units.mass = number_field(u["mass"], "units.mass");
  }
  if (doc.contains("k_grid")) {
    const auto& g = doc["k_grid"];
    check_keys(g, "k_grid", {"k_min", "k_max", "n_points"});
    if (g.contains("k_min")) c.k_grid.k_min = number_field(g["k_min"], "k_grid.k_min");
    if (g.contains("k_max")) c.k_grid.k_max = number_field(g["k_max"], "k_grid.k_max");
    if (g.contains("n_points")) {
      if (!g["n_points"].is_number_integer()) throw ConfigError("k_grid.n_points: expected an integer");
      c.k_grid.n_points = g["n_points"].get<int>();
    }
  }
  if (doc.contains("spin")) {
    const auto& s = doc["spin"];
    check_keys(s, "spin", {"theta", "phi"});
    if (s.contains("theta")) c.theta = number_field(s["theta"], "spin.theta");
    if (s.contains("phi")) c.phi = number_field(s["phi"], "spin.phi");
  }
  if (doc.contains("omega")) c.omega = number_field(doc["omega"], "omega");
  if (doc.contains("probe_omega")) c.probe_omega = number_field(doc["probe_omega"], "probe_omega");
  if (doc.contains("slices")) {
    if (!doc["slices"].is_number_integer()) throw ConfigError("slices: expected an integer");
    c.slices = doc["slices"].get<int>();
  }
  if (doc.contains("outputs")) {
    if (!doc["outputs"].is_array()) throw ConfigError("outputs: expected an array of names");
    c.outputs.clear();
    for (const auto& o : doc["outputs"]) {
      if (!o.is_string()) throw ConfigError("outputs: expected strings");
      c.outputs.push_back(o.get<std::string>());
    }
  }
  if (doc.contains("format")) {
    const auto f = doc["format"].is_string() ? doc["format"].get<std::string>() : std::string();
    if (f == "csv")
      c.format = OutputFormat::Csv;
    else if (f == "json")
      c.format = OutputFormat::Json;
    else
      throw ConfigError("format: expected \"csv\" or \"json\"");
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer()) throw ConfigError("seed: expected an integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  return c;
}

BarrierSpec barrier_from_config(const SweepConfig& c) {
  BarrierParams p;
  p.v0 = c.v0;
  p.width = c.width;
  p.quad_coeff = c.quad_coeff;
  p.slope_total = c.slope_total;
  p.samples = c.samples;
  return make_barrier(c.kind, p, c.units);
}

const std::vector<std::string>& available_quantities() {
  static const std::vector<std::string> names = {
      "T", "R", "t_re", "t_im", "r_left_re", "r_left_im", "r_right_re", "r_right_im",
      "phase_t", "phase_r_left", "phase_r_right", "unitarity_residual",
      "tau_d", "c_ll", "c_rr", "c_rl_re", "c_rl_im", "lambda_plus", "lambda_minus",
      "tau_zt", "tau_yt", "tau_zr", "tau_yr_left", "tau_yr_right", "delta_tau_re",
      "delta_tau_im",
      "wl_alpha_r_plus", "wl_alpha_r_minus", "wl_alpha_l_plus", "wl_alpha_l_minus",
      "alpha_r_plus", "alpha_r_minus", "alpha_l_plus", "alpha_l_minus",
      "alpha0_r", "alpha0_l", "alpha1_r", "alpha1_l", "f_r", "f_l", "condition_number",
      "expectation", "cond_avg", "cond_avg_closed", "cond_avg_reflected", "weak_re", "weak_im",
      "disturbance", "transmitted_prob",
      "second_moment", "delta_t", "wl_beta_r_plus", "wl_beta_r_minus", "wl_beta_l_plus",
      "wl_beta_l_minus",
      "steinberg_re", "steinberg_im"};
  return names;
}

std::vector<std::string> default_outputs(std::string_view sub) {
  if (sub == "amplitudes")
    return {"T", "R", "t_re", "t_im", "r_left_re", "r_left_im", "r_right_re", "r_right_im",
            "phase_t", "phase_r_left", "phase_r_right", "unitarity_residual"};
  if (sub == "dwell") return {"tau_d", "c_rr", "c_rl_re", "c_rl_im", "lambda_plus", "lambda_minus"};
  if (sub == "larmor")
    return {"tau_zt", "tau_yt", "tau_zr", "tau_yr_left", "tau_yr_right", "delta_tau_re",
            "delta_tau_im"};
  if (sub == "cv")
    return {"wl_alpha_r_plus", "wl_alpha_r_minus", "wl_alpha_l_plus", "wl_alpha_l_minus",
            "alpha0_r", "alpha0_l", "alpha1_r", "alpha1_l", "f_r", "f_l", "condition_number"};
  if (sub == "conditioned")
    return {"cond_avg", "weak_re", "weak_im", "disturbance", "transmitted_prob"};
  if (sub == "moments") return {"expectation", "second_moment", "delta_t"};
  throw ConfigError("unknown subcommand '" + std::string(sub) + "'");
}

void validate(const SweepConfig& c) {
  const auto barrier = barrier_from_config(c);
  (void)barrier;
  if (!(c.k_grid.k_min > 0.0) || !std::isfinite(c.k_grid.k_min))
    throw ConfigError("k_grid.k_min: must be > 0");
  if (!(c.k_grid.k_max > c.k_grid.k_min) || !std::isfinite(c.k_grid.k_max))
    throw ConfigError("k_grid.k_max: must be > k_min");
  if (c.k_grid.n_points < 2) throw ConfigError("k_grid.n_points: must be >= 2");
  postselection_overlaps(c.theta, c.phi);
  if (!(c.omega >= 0.0) || !std::isfinite(c.omega))
    throw ConfigError("omega: must be > 0 (or 0 for the probe default)");
  if (!(c.probe_omega >= 0.0) || !std::isfinite(c.probe_omega))
    throw ConfigError("probe_omega: must be > 0 (or 0 for the default)");
  if (c.slices < 2) throw ConfigError("slices: must be >= 2");
  const auto& known = available_quantities();
  for (const auto& o : c.outputs) {
    if (std::find(known.begin(), known.end(), o) == known.end())
      throw ConfigError("outputs: unknown quantity '" + o + "'");
  }
}

double k_reference(const BarrierSpec& barrier) {
  const double k0 = barrier.k0();
  return k0 > 0.0 ? k0 : 1.0;
}

namespace {

std::vector<double> grid_fractions(const KGrid& g) {
  std::vector<double> u(g.n_points);
  for (int i = 0; i < g.n_points; ++i)
    u[i] = g.k_min + (g.k_max - g.k_min) * i / (g.n_points - 1);
  return u;
}

}  // namespace

std::vector<double> k_values(const SweepConfig& c, const BarrierSpec& barrier) {
  const double ref = k_reference(barrier);
  auto ks = grid_fractions(c.k_grid);
  for (auto& k : ks) k *= ref;
  return ks;
}

namespace {

struct Cell {
  std::optional<double> value;
  std::string status;  // empty when ok
};

struct Context {
  const BarrierSpec& barrier;
  const PointAnalysis& p;
};

Cell ok(double v) {
  if (!std::isfinite(v)) return {std::nullopt, "numerical_failure"};
  return {v, {}};
}

std::string cv_status(const PointAnalysis& p) {
  return std::string(to_string(p.cv_status == PointStatus::Ok ? PointStatus::NumericalFailure
                                                              : p.cv_status));
}

using Getter = std::function<Cell(const Context&)>;

Getter amp(std::function<double(const ScatteringAmplitudes&)> f) {
  return [f](const Context& c) { return ok(f(c.p.amplitudes)); };
}

Getter dwell(std::function<double(const PointAnalysis&)> f) {
  return [f](const Context& c) { return ok(f(c.p)); };
}

Getter times(std::function<double(const ComplexTimes&)> f) {
  return [f](const Context& c) -> Cell {
    if (!c.p.times) return {std::nullopt, "numerical_failure"};
    return ok(f(*c.p.times));
  };
}

Getter cvs(std::function<double(const PointAnalysis&)> f) {
  return [f](const Context& c) -> Cell {
    if (!c.p.has_cvs()) return {std::nullopt, cv_status(c.p)};
    try {
      return ok(f(c.p));
    } catch (const NumericalError&) {
      return {std::nullopt, "numerical_failure"};
    }
  };
}

Getter weak_part(bool real) {
  return [real](const Context& c) -> Cell {
    try {
      const Complex w = weak_value(c.p.dwell, c.p.amplitudes);
      return ok(real ? w.real() : w.imag());
    } catch (const NumericalError&) {
      return {std::nullopt, "numerical_failure"};
    }
  };
}

Getter steinberg_part(bool real) {
  return [real](const Context& c) -> Cell {
    if (!is_symmetric(c.barrier)) return {std::nullopt, "not_applicable"};
    try {
      const Complex s = steinberg_time(c.barrier, c.p.wave, c.p.amplitudes);
      return ok(real ? s.real() : s.imag());
    } catch (const Error&) {
      return {std::nullopt, "numerical_failure"};
    }
  };
}

const InitialSystemState kLeft = InitialSystemState::left_incoming();

const std::map<std::string, Getter>& getters() {
  static const std::map<std::string, Getter> g = {
      {"T", amp([](const auto& a) { return a.T; })},
      {"R", amp([](const auto& a) { return a.R; })},
      {"t_re", amp([](const auto& a) { return a.t.real(); })},
      {"t_im", amp([](const auto& a) { return a.t.imag(); })},
      {"r_left_re", amp([](const auto& a) { return a.r_left.real(); })},
      {"r_left_im", amp([](const auto& a) { return a.r_left.imag(); })},
      {"r_right_re", amp([](const auto& a) { return a.r_right.real(); })},
      {"r_right_im", amp([](const auto& a) { return a.r_right.imag(); })},
      {"phase_t", amp([](const auto& a) { return a.phase_t; })},
      {"phase_r_left", amp([](const auto& a) { return a.phase_r_left; })},
      {"phase_r_right", amp([](const auto& a) { return a.phase_r_right; })},
      {"unitarity_residual", amp([](const auto& a) { return check_unitarity(a).max(); })},
      {"tau_d", dwell([](const auto& p) { return p.dwell.c_ll; })},
      {"c_ll", dwell([](const auto& p) { return p.dwell.c_ll; })},
      {"c_rr", dwell([](const auto& p) { return p.dwell.c_rr; })},
      {"c_rl_re", dwell([](const auto& p) { return p.dwell.c_rl.real(); })},
      {"c_rl_im", dwell([](const auto& p) { return p.dwell.c_rl.imag(); })},
      {"lambda_plus", dwell([](const auto& p) { return p.eigen.lambda_plus; })},
      {"lambda_minus", dwell([](const auto& p) { return p.eigen.lambda_minus; })},
      {"tau_zt", times([](const auto& t) { return t.tau_zt; })},
      {"tau_yt", times([](const auto& t) { return t.tau_yt; })},
      {"tau_zr", times([](const auto& t) { return t.tau_zr; })},
      {"tau_yr_left", times([](const auto& t) { return t.tau_yr_left; })},
      {"tau_yr_right", times([](const auto& t) { return t.tau_yr_right; })},
      {"delta_tau_re", times([](const auto& t) { return t.delta_tau.real(); })},
      {"delta_tau_im", times([](const auto& t) { return t.delta_tau.imag(); })},
      {"wl_alpha_r_plus", cvs([](const auto& p) { return p.omega * p.alpha->alpha_r_plus; })},
      {"wl_alpha_r_minus", cvs([](const auto& p) { return p.omega * p.alpha->alpha_r_minus; })},
      {"wl_alpha_l_plus", cvs([](const auto& p) { return p.omega * p.alpha->alpha_l_plus; })},
      {"wl_alpha_l_minus", cvs([](const auto& p) { return p.omega * p.alpha->alpha_l_minus; })},
      {"alpha_r_plus", cvs([](const auto& p) { return p.alpha->alpha_r_plus; })},
      {"alpha_r_minus", cvs([](const auto& p) { return p.alpha->alpha_r_minus; })},
      {"alpha_l_plus", cvs([](const auto& p) { return p.alpha->alpha_l_plus; })},
      {"alpha_l_minus", cvs([](const auto& p) { return p.alpha->alpha_l_minus; })},
      {"alpha0_r", cvs([](const auto& p) { return p.alpha->alpha0_r; })},
      {"alpha0_l", cvs([](const auto& p) { return p.alpha->alpha0_l; })},
      {"alpha1_r", cvs([](const auto& p) { return p.alpha->alpha1_r; })},
      {"alpha1_l", cvs([](const auto& p) { return p.alpha->alpha1_l; })},
      {"f_r", cvs([](const auto& p) { return p.alpha->f_r; })},
      {"f_l", cvs([](const auto& p) { return p.alpha->f_l; })},
      {"condition_number", cvs([](const auto& p) { return p.alpha->condition_number; })},
      {"expectation",
       cvs([](const auto& p) { return expectation_via_cvs(*p.alpha, *p.povm, kLeft); })},
      {"cond_avg", cvs([](const auto& p) {
         return conditioned_average(*p.alpha, *p.povm, kLeft, Side::Transmitted);
       })},
      {"cond_avg_closed", cvs([](const auto& p) {
         return conditioned_average_closed_form(*p.transformed, p.amplitudes, *p.times, *p.alpha,
                                                p.spin, Side::Transmitted);
       })},
      {"cond_avg_reflected", cvs([](const auto& p) {
         return conditioned_average(*p.alpha, *p.povm, kLeft, Side::Reflected);
       })},
      {"weak_re", weak_part(true)},
      {"weak_im", weak_part(false)},
      {"disturbance", cvs([](const auto& p) {
         return disturbance(*p.measurement, *p.alpha, kLeft, Side::Transmitted);
       })},
      {"transmitted_prob", [](const Context& c) -> Cell {
         if (!c.p.povm) return {std::nullopt, "numerical_failure"};
         return ok(outcome_probabilities(*c.p.povm, kLeft).side(Side::Transmitted));
       }},
      {"second_moment",
       cvs([](const auto& p) { return expectation_via_cvs(*p.beta, *p.povm, kLeft); })},
      {"delta_t", cvs([](const auto& p) {
         const double first = expectation_via_cvs(*p.alpha, *p.povm, kLeft);
         return second_moment_and_uncertainty(*p.beta, *p.povm, kLeft, first).uncertainty;
       })},
      {"wl_beta_r_plus", cvs([](const auto& p) { return p.omega * p.beta->alpha_r_plus; })},
      {"wl_beta_r_minus", cvs([](const auto& p) { return p.omega * p.beta->alpha_r_minus; })},
      {"wl_beta_l_plus", cvs([](const auto& p) { return p.omega * p.beta->alpha_l_plus; })},
      {"wl_beta_l_minus", cvs([](const auto& p) { return p.omega * p.beta->alpha_l_minus; })},
      {"steinberg_re", steinberg_part(true)},
      {"steinberg_im", steinberg_part(false)},
  };
  return g;
}

int status_rank(const std::string& s) {
  if (s == "numerical_failure") return 3;
  if (s == "singular_context") return 2;
  if (s == "not_applicable") return 1;
  return 0;
}

PipelineOptions pipeline_options(const SweepConfig& c) {
  PipelineOptions o;
  o.solver.slices = c.slices;
  o.probe_omega = c.probe_omega;
  o.omega = c.omega;
  return o;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  validate(config);
  const auto barrier = barrier_from_config(config);
  const auto ks = k_values(config, barrier);
  const auto fractions = grid_fractions(config.k_grid);
  const auto spin = postselection_overlaps(config.theta, config.phi);
  const auto options = pipeline_options(config);

  SweepResult result;
  result.columns = config.outputs;
  result.rows.resize(ks.size());
  const auto& table = getters();

  detail::parallel_for(ks.size(), [&](std::size_t i) {
    OutputRow& row = result.rows[i];
    row.k_over_k0 = fractions[i];
    row.values.assign(config.outputs.size(), std::nullopt);
    std::string worst = "ok";
    try {
      const auto p = analyze_point(barrier, ks[i], spin, options);
      const Context ctx{barrier, p};
      for (std::size_t j = 0; j < config.outputs.size(); ++j) {
        const auto& name = config.outputs[j];
        const Cell cell = table.at(name)(ctx);
        row.values[j] = cell.value;
        if (!cell.value && status_rank(cell.status) > status_rank(worst)) worst = cell.status;
      }
    } catch (const Error&) {
      worst = "numerical_failure";
    }
    row.status = worst;
  });

  // phases are unwrapped along the scan
  for (std::size_t j = 0; j < result.columns.size(); ++j) {
    const auto& name = result.columns[j];
    if (name.rfind("phase_", 0) != 0) continue;
    std::optional<double> prev;
    for (auto& row : result.rows) {
      auto& v = row.values[j];
      if (!v) continue;
      if (prev) *v -= 2.0 * kPi * std::round((*v - *prev) / (2.0 * kPi));
      prev = v;
    }
  }

  int worst = 0;
  for (const auto& row : result.rows) worst = std::max(worst, status_rank(row.status));
  result.exit_code = worst == 3   ? exit_code::kNumericalFailure
                     : worst > 0 ? exit_code::kPartialResults
                                 : exit_code::kOk;
  return result;
}

void write_csv(std::ostream& out, const SweepResult& r) {
  out << "k_over_k0";
  for (const auto& c : r.columns) out << ',' << c;
  out << ",status\n";
  for (const auto& row : r.rows) {
    out << format_number(row.k_over_k0);
    for (const auto& v : row.values) {
      out << ',';
      if (v) out << format_number(*v);
    }
    out << ',' << row.status << '\n';
  }
}

void write_json(std::ostream& out, const SweepResult& r) {
  nlohmann::ordered_json doc;
  doc["columns"] = r.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json j;
    j["k_over_k0"] = row.k_over_k0;
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
      if (row.values[i])
        j[r.columns[i]] = *row.values[i];
      else
        j[r.columns[i]] = nullptr;
    }
    j["status"] = row.status;
    doc["rows"].push_back(std::move(j));
  }
  doc["exit_code"] = r.exit_code;
  out << doc.dump(2) << '\n';
}

VerifyResult verify_command(const SweepConfig& config) {
  validate(config);
  const auto barrier = barrier_from_config(config);
  const auto ks = k_values(config, barrier);
  const auto spin = postselection_overlaps(config.theta, config.phi);
  const auto options = pipeline_options(config);

  VerifyResult v;
  v.reports = run_all_identities(barrier, ks, spin, options);

  // expectation is independent of the detector context
  const double k = ks[ks.size() / 2];
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> th(0.05, kPi - 0.05);
  std::uniform_real_distribution<double> ph(0.05, 2.0 * kPi - 0.05);
  double worst = 0.0;
  double reference = 0.0;
  std::string skip;
  try {
    int accepted = 0;
    while (accepted < 50) {
      const auto s = postselection_overlaps(th(rng), ph(rng));
      if (std::abs(s.x1.real()) < 0.02 || std::abs(s.x1.imag()) < 0.02) continue;
      const auto p = analyze_point(barrier, k, s, options);
      if (!p.has_cvs()) {
        skip = p.cv_error;
        break;
      }
      reference = p.dwell.c_ll;
      const double e = expectation_via_cvs(*p.alpha, *p.povm, InitialSystemState::left_incoming());
      worst = std::max(worst, std::abs(e - reference));
      ++accepted;
    }
  } catch (const Error& e) {
    skip = e.what();
  }
  if (skip.empty())
    v.reports.push_back(make_report("context_invariance", k, reference + worst, reference, 1e-8));
  else
    v.reports.push_back(skipped_report("context_invariance", k, skip));

  v.exit_code = all_passed(v.reports) ? exit_code::kOk : exit_code::kChecksFailed;
  return v;
}

nlohmann::json to_json(const IdentityReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["k"] = r.k;
  if (r.skipped) {
    j["residual"] = nullptr;
  } else if (std::isfinite(r.abs_residual)) {
    j["residual"] = r.abs_residual;
  } else {
    j["residual"] = "inf";
  }
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["skipped"] = r.skipped;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

void write_reports_csv(std::ostream& out, const std::vector<IdentityReport>& reports) {
  out << "name,k,residual,tolerance,passed,skipped,reason\n";
  for (const auto& r : reports) {
    out << r.name << ',' << format_number(r.k) << ',';
    if (!r.skipped) out << format_number(r.abs_residual);
    out << ',' << format_number(r.tolerance) << ',' << (r.passed ? "true" : "false") << ','
        << (r.skipped ? "true" : "false") << ',' << csv_quote(r.reason) << '\n';
  }
}

void write_reports_json(std::ostream& out, const std::vector<IdentityReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["k"] = r.k;
    if (r.skipped || !std::isfinite(r.abs_residual))
      j["residual"] = nullptr;
    else
      j["residual"] = r.abs_residual;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    j["skipped"] = r.skipped;
    if (!r.reason.empty()) j["reason"] = r.reason;
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace ttclock
