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


#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ttclock/errors.hpp"
#include "ttclock/sweep.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::string> barrier;
  std::optional<double> v0, d, a, epsilon, theta, phi, omega, probe_omega, kmin, kmax, hbar, mass;
  std::optional<int> n, slices;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
  std::string out;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_path, "JSON config file");
  app->add_option("--barrier", f.barrier, "square|quadratic|trapezoid|sampled");
  app->add_option("--v0", f.v0, "barrier height V0");
  app->add_option("--d", f.d, "barrier width d");
  app->add_option("--a", f.a, "quadratic coefficient a");
  app->add_option("--epsilon", f.epsilon, "trapezoid slope total epsilon");
  app->add_option("--theta", f.theta, "post-selection polar angle");
  app->add_option("--phi", f.phi, "post-selection azimuth");
  app->add_option("--omega", f.omega, "working Larmor frequency for the CVs");
  app->add_option("--probe-omega", f.probe_omega, "Larmor probe frequency");
  app->add_option("--kmin", f.kmin, "lowest k in units of k0");
  app->add_option("--kmax", f.kmax, "highest k in units of k0");
  app->add_option("--n", f.n, "number of k points");
  app->add_option("--slices", f.slices, "transfer-matrix slices");
  app->add_option("--hbar", f.hbar, "hbar");
  app->add_option("--mass", f.mass, "particle mass");
  app->add_option("--format", f.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--outputs", f.outputs, "quantities to emit")->delimiter(',');
  app->add_option("--seed", f.seed, "seed for randomized checks");
  app->add_option("--out", f.out, "output path (default stdout)");
}

ttclock::SweepConfig resolve(ttclock::SweepConfig base, const Flags& f) {
  using ttclock::ConfigError;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ConfigError("--config: cannot open '" + f.config_path + "'");
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("--config: invalid JSON (" + std::string(e.what()) + ")");
    }
    base = ttclock::config_from_json(doc, base);
  }
  if (f.barrier) base.kind = ttclock::parse_barrier_kind(*f.barrier);
  if (f.v0) base.v0 = *f.v0;
  if (f.d) base.width = *f.d;
  if (f.a) base.quad_coeff = *f.a;
  if (f.epsilon) base.slope_total = *f.epsilon;
  if (f.theta) base.theta = *f.theta;
  if (f.phi) base.phi = *f.phi;
  if (f.omega) base.omega = *f.omega;
  if (f.probe_omega) base.probe_omega = *f.probe_omega;
  if (f.kmin) base.k_grid.k_min = *f.kmin;
  if (f.kmax) base.k_grid.k_max = *f.kmax;
  if (f.n) base.k_grid.n_points = *f.n;
  if (f.slices) base.slices = *f.slices;
  if (f.hbar) base.units.hbar = *f.hbar;
  if (f.mass) base.units.mass = *f.mass;
  if (f.format) base.format = *f.format == "json" ? ttclock::OutputFormat::Json
                                                  : ttclock::OutputFormat::Csv;
  if (f.seed) base.seed = *f.seed;
  if (!f.outputs.empty()) base.outputs = f.outputs;
  return base;
}

template <class Write>
void emit(const std::string& path, Write write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ttclock::ConfigError("--out: cannot open '" + path + "'");
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operational tunneling-time toolkit"};
  app.require_subcommand(1);

  const std::vector<std::string> sweeps = {"amplitudes", "dwell", "larmor",
                                           "cv",         "conditioned", "moments"};
  std::vector<std::unique_ptr<Flags>> flags;
  std::vector<CLI::App*> subs;
  for (const auto& name : sweeps) {
    flags.push_back(std::make_unique<Flags>());
    auto* sub = app.add_subcommand(name, "sweep: " + name);
    add_common(sub, *flags.back());
    subs.push_back(sub);
  }
  Flags fig_flags;
  std::string fig_name;
  auto* fig = app.add_subcommand("figure", "figure-data preset");
  fig->add_option("name", fig_name, "fig2a|fig2b|fig2c|fig3a|fig3b|fig3c")->required();
  add_common(fig, fig_flags);
  Flags verify_flags;
  auto* ver = app.add_subcommand("verify", "run all identity checks");
  add_common(ver, verify_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ttclock::exit_code::kConfigError;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      auto base = ttclock::default_config();
      base.outputs = ttclock::default_outputs(sweeps[i]);
      const auto config = resolve(base, *flags[i]);
      const auto result = ttclock::run_sweep(config);
      emit(flags[i]->out, [&](std::ostream& os) {
        if (config.format == ttclock::OutputFormat::Json)
          ttclock::write_json(os, result);
        else
          ttclock::write_csv(os, result);
      });
      return result.exit_code;
    }
    if (fig->parsed()) {
      const auto config = resolve(ttclock::figure_preset(fig_name), fig_flags);
      const auto result = ttclock::run_sweep(config);
      emit(fig_flags.out, [&](std::ostream& os) {
        if (config.format == ttclock::OutputFormat::Json)
          ttclock::write_json(os, result);
        else
          ttclock::write_csv(os, result);
      });
      return result.exit_code;
    }
    if (ver->parsed()) {
      auto base = ttclock::default_config();
      base.k_grid.n_points = 11;
      const auto config = resolve(base, verify_flags);
      const auto result = ttclock::verify_command(config);
      emit(verify_flags.out, [&](std::ostream& os) {
        if (config.format == ttclock::OutputFormat::Json)
          ttclock::write_reports_json(os, result.reports);
        else
          ttclock::write_reports_csv(os, result.reports);
      });
      return result.exit_code;
    }
  } catch (const ttclock::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ttclock::exit_code::kConfigError;
  } catch (const ttclock::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return ttclock::exit_code::kNumericalFailure;
  }
  return ttclock::exit_code::kOk;
}
