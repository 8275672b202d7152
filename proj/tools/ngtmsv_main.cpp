// Copyright 2026 The ngtmsv Authors
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

// Command-line front end: single-point reports, grid sweeps and the named
// figure grids.
//
// Exit codes: 0 success, 1 some grid points not ok (without --allow-partial),
// 2 usage error, 3 runtime failure.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ngtmsv/analytics.hpp"
#include "ngtmsv/errors.hpp"
#include "ngtmsv/sweep.hpp"

namespace {

using ngtmsv::Settings;

constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

// String-valued options that mirror config keys; only those given on the
// command line end up in the settings map.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    options[key] = app->add_option("--" + key, values[key], help);
  }

  void overlay(Settings& settings) const {
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) settings[key] = values.at(key);
    }
  }
};

void add_spec_flags(CLI::App* app, FlagSet& flags) {
  flags.add(app, "preset", "tmsv, asym-ps-N, asym-pa-N, asym-pc-N, sym-ps-N, sym-pa-N or sym-pc-N");
  flags.add(app, "photons", "explicit m1,m2,n1,n2");
  flags.add(app, "tau", "transmissivity: t, start:stop:count, or t1,t2 with --photons");
}

int finish_sweep(const ngtmsv::SweepRequest& request) {
  const auto records = ngtmsv::run_sweep(request);
  ngtmsv::write_table(records, request.format, request.output);
  if (!ngtmsv::all_ok(records) && !request.allow_partial) {
    std::size_t bad = 0;
    for (const auto& r : records) bad += r.status != ngtmsv::RecordStatus::kOk;
    std::cerr << "ngtmsv: " << bad << " of " << records.size()
              << " grid points are degenerate or stationary (pass --allow-partial to accept)\n";
    return kExitPartial;
  }
  return 0;
}

void print_report(const std::string& label, double lambda, const ngtmsv::NGOperationSpec& spec, double phi,
                  const ngtmsv::SensitivityReport& r, bool json) {
  using ngtmsv::format_double;
  const std::pair<const char*, double> rows[] = {
      {"lambda", lambda},         {"tau1", spec.tau1},           {"tau2", spec.tau2},
      {"phi", phi},               {"p_success", r.p_success},    {"f_parity", r.f_parity},
      {"delta_phi", r.delta_phi}, {"delta_phi_min", r.delta_phi_min}, {"merit", r.merit},
      {"weighted_merit", r.weighted_merit}};
  if (json) {
    nlohmann::ordered_json j;
    j["spec"] = label;
    for (const auto& [key, value] : rows) j[key] = value;
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "spec " << label << '\n';
  for (const auto& [key, value] : rows) std::cout << key << ' ' << format_double(value) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase estimation with heralded non-Gaussian two-mode squeezed vacuum states"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Report P, f, sensitivity, QCRB and merits at one point");
  FlagSet eval_flags;
  add_spec_flags(eval, eval_flags);
  eval_flags.add(eval, "lambda", "squeezing lambda = tanh r");
  eval_flags.add(eval, "phi", "phase (default 0.01)");
  bool eval_json = false;
  eval->add_flag("--json", eval_json, "print the report as JSON");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Evaluate one quantity over a (lambda, tau, phi) grid");
  FlagSet sweep_flags;
  std::string config_path;
  sweep->add_option("--config", config_path, "key=value file; flags override its entries");
  sweep_flags.add(sweep, "quantity", "probability, qfi, qcrb, parity, sensitivity, merit, weighted_merit or wigner");
  add_spec_flags(sweep, sweep_flags);
  sweep_flags.add(sweep, "lambda", "value or start:stop:count");
  sweep_flags.add(sweep, "phi", "value or start:stop:count (default 0.01)");
  sweep_flags.add(sweep, "point", "Wigner point q1,p1,q2,p2 (default origin)");
  sweep_flags.add(sweep, "format", "csv or json (default csv)");
  sweep_flags.add(sweep, "output", "output path, - for stdout");
  bool sweep_partial = false;
  sweep->add_flag("--allow-partial", sweep_partial, "exit 0 even if some points are degenerate or stationary");

  // figure
  auto* figure = app.add_subcommand("figure", "Emit the data grid for a named figure panel");
  std::string figure_name;
  bool figure_list = false;
  figure->add_option("name", figure_name, "figure panel, e.g. fig2a");
  figure->add_flag("--list", figure_list, "list the available panels");
  FlagSet figure_flags;
  figure_flags.add(figure, "preset", "override the panel's default state");
  figure_flags.add(figure, "photons", "override with explicit m1,m2,n1,n2");
  figure_flags.add(figure, "format", "csv or json (default csv)");
  figure_flags.add(figure, "output", "output path, - for stdout");
  bool figure_partial = false;
  figure->add_flag("--allow-partial", figure_partial, "exit 0 even if some points are degenerate or stationary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval) {
      Settings s;
      s["quantity"] = "sensitivity";
      eval_flags.overlay(s);
      const auto request = ngtmsv::request_from_settings(s);
      if (request.size() != 1) throw ngtmsv::UsageError("eval takes single values, not ranges");
      const double lambda = request.lambda.start;
      const double phi = request.phi.start;
      const auto spec = request.tau_pair ? request.spec.resolve((*request.tau_pair)[0], (*request.tau_pair)[1])
                                         : request.spec.resolve(request.tau.start, request.tau.start);
      const auto params = ngtmsv::derive_params(lambda, spec);
      print_report(request.spec.label(), lambda, spec, phi, ngtmsv::sensitivity_report(params, spec, phi), eval_json);
      return 0;
    }

    if (*sweep) {
      Settings s = config_path.empty() ? Settings{} : ngtmsv::read_config_file(config_path);
      sweep_flags.overlay(s);
      if (sweep_partial) s["allow-partial"] = "true";
      return finish_sweep(ngtmsv::request_from_settings(s));
    }

    if (figure_list) {
      for (const auto& f : ngtmsv::figure_presets()) {
        std::cout << f.name << "  " << ngtmsv::to_string(f.quantity) << "  " << f.description << '\n';
      }
      return 0;
    }
    if (figure_name.empty()) throw ngtmsv::UsageError("figure needs a panel name (see --list)");
    auto request = ngtmsv::figure_request(ngtmsv::find_figure(figure_name));
    Settings s;
    figure_flags.overlay(s);
    if (s.count("preset") && s.count("photons")) throw ngtmsv::UsageError("keys 'preset' and 'photons' are mutually exclusive");
    if (s.count("preset")) request.spec = ngtmsv::parse_preset(s["preset"]);
    if (s.count("photons")) {
      Settings probe{{"quantity", "probability"}, {"photons", s["photons"]}, {"lambda", "0"}};
      request.spec = ngtmsv::request_from_settings(probe).spec;
    }
    if (s.count("format")) request.format = ngtmsv::parse_format(s["format"]);
    if (s.count("output")) request.output = s["output"];
    request.allow_partial = figure_partial;
    return finish_sweep(request);
  } catch (const ngtmsv::UsageError& e) {
    std::cerr << "ngtmsv: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ngtmsv: " << e.what() << '\n';
    return kExitRuntime;
  }
}
