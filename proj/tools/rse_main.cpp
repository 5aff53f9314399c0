// Copyright 2026 The rsekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "svg.hpp"

using namespace rse;
using namespace rse::cli;

namespace {

// Flag values stay unset unless given, so they override the config file
// only when present.
struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> dim;
  std::optional<double> require_fidelity;

  std::optional<Level> n;
  std::optional<double> alpha;
  std::optional<double> omega;
  std::optional<double> mismatch;
  std::optional<double> horizon;
  std::optional<double> step;
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> max_iterations;
  std::optional<double> threshold;
  std::optional<std::size_t> restarts;
  std::optional<std::size_t> max_evals;
  std::optional<std::string> preset;
  std::vector<std::string> components;
  std::vector<Level> n_values;
  bool no_iterations = false;
  std::optional<std::string> params;
  std::vector<std::string> inputs;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON experiment config; flags override its fields");
  cmd->add_option("--seed", f.seed, "optimizer seed");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--dim", f.dim, "override the Fock-space truncation");
  cmd->add_option("--require-fidelity", f.require_fidelity, "exit with code 4 below this fidelity");
}

void add_optimizer(CLI::App* cmd, Flags& f) {
  cmd->add_option("--iterations,-N", f.iterations, "iteration count; scans 1..max when omitted");
  cmd->add_option("--max-iterations", f.max_iterations, "upper end of the iteration scan");
  cmd->add_option("--threshold", f.threshold, "fidelity threshold of the iteration scan");
  cmd->add_option("--restarts", f.restarts, "restarts per iteration count");
  cmd->add_option("--max-evals", f.max_evals, "objective evaluations per restart");
}

Component parse_component(const std::string& text) {
  // level:weight[:phase]
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) throw DomainError("component must be level:weight[:phase]");
  try {
    Component c;
    c.level = static_cast<Level>(std::stoull(parts[0]));
    c.weight = std::stod(parts[1]);
    if (parts.size() == 3) c.phase = std::stod(parts[2]);
    return c;
  } catch (const std::exception&) {
    throw DomainError("component must be level:weight[:phase], got '" + text + "'");
  }
}

ExperimentConfig resolve(const Flags& f) {
  ExperimentConfig cfg;
  if (!f.config.empty()) cfg = load_config_file(f.config, cfg);
  if (f.seed) cfg.seed = *f.seed;
  if (f.out) cfg.out = *f.out;
  if (f.dim) cfg.dim = *f.dim;
  if (f.require_fidelity) cfg.require_fidelity = *f.require_fidelity;
  if (f.n) cfg.n = *f.n;
  if (f.alpha) cfg.alpha = Complex(*f.alpha, 0.0);
  if (f.omega) cfg.omega = *f.omega;
  if (f.mismatch) cfg.mismatch = *f.mismatch;
  if (f.horizon) cfg.horizon = *f.horizon;
  if (f.step) cfg.step = *f.step;
  if (f.iterations) cfg.iterations = *f.iterations;
  if (f.max_iterations) cfg.max_iterations = *f.max_iterations;
  if (f.threshold) cfg.threshold = *f.threshold;
  if (f.restarts) cfg.restarts = *f.restarts;
  if (f.max_evals) cfg.max_evals = *f.max_evals;
  if (f.preset) cfg.preset = *f.preset;
  if (!f.components.empty()) {
    cfg.components.clear();
    for (const auto& c : f.components) cfg.components.push_back(parse_component(c));
    cfg.preset.clear();
  }
  if (!f.n_values.empty()) cfg.n_values = f.n_values;
  if (f.no_iterations) cfg.scan_iterations = false;
  if (f.params) cfg.params_path = *f.params;
  if (!f.inputs.empty()) cfg.inputs = f.inputs;
  return cfg;
}

int below(const ExperimentConfig& cfg, double achieved) {
  if (cfg.require_fidelity && achieved < *cfg.require_fidelity) {
    std::fprintf(stderr, "rse: fidelity %.12f below required %.12f\n", achieved, *cfg.require_fidelity);
    return kExitThreshold;
  }
  return kExitOk;
}

int cmd_trace(const ExperimentConfig& cfg) {
  const auto r = run_trace(cfg);
  write_trace(r, cfg);
  std::printf("matched peak %.10f, mismatched peak %.10f\n", r.matched.peak(), r.mismatched.peak());
  if (r.first_passage) {
    std::printf("first passage %.6f, transfer time %.6f, bound %.6f\n", *r.first_passage, r.transfer_time,
                r.transfer_bound);
  } else {
    std::printf("no first passage, transfer time %.6f, bound %.6f\n", r.transfer_time, r.transfer_bound);
  }
  return below(cfg, r.matched.peak());
}

int cmd_scaling(const ExperimentConfig& cfg) {
  const auto r = run_scaling(cfg);
  write_scaling(r, cfg);
  std::printf("exponent T_transfer %.6f, T_bound %.6f\n", r.time_fit.exponent, r.bound_fit.exponent);
  if (cfg.require_fidelity && cfg.scan_iterations) {
    for (const auto& row : r.rows) {
      if (!row.min_iterations) {
        std::fprintf(stderr, "rse: n = %zu did not reach %.6f within %zu iterations\n", row.n,
                     *cfg.require_fidelity, cfg.max_iterations);
        return kExitThreshold;
      }
    }
  }
  return kExitOk;
}

int cmd_prepare(const ExperimentConfig& cfg) {
  const auto r = run_preparation(cfg);
  write_preparation(r, cfg);
  std::printf("N = %zu, reduced fidelity %.12f, full fidelity %.12f\n", r.record.params.iterations(),
              r.reduced_fidelity, r.full_fidelity);
  return below(cfg, r.full_fidelity);
}

int cmd_export(const ExperimentConfig& cfg) {
  const auto r = run_export(cfg);
  write_export(r, cfg);
  std::printf("%zu gates, round trip %s\n", r.gates.size(), r.round_trip ? "ok" : "FAILED");
  if (!r.round_trip) return kExitConfig;
  if (r.resimulated_fidelity) {
    std::printf("re-simulated fidelity %.12f (recorded %.12f)\n", *r.resimulated_fidelity, r.recorded_fidelity);
    return below(cfg, *r.resimulated_fidelity);
  }
  return kExitOk;
}

int cmd_plot(const ExperimentConfig& cfg) {
  write_file(join_path(cfg.out, "plot.svg"), run_plot(cfg));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonant subspace engineering experiments"};
  app.require_subcommand(1);
  Flags f;

  auto* trace = app.add_subcommand("trace", "fidelity traces for matched and mismatched resonance");
  add_common(trace, f);
  trace->add_option("--n", f.n, "target Fock level");
  trace->add_option("--alpha", f.alpha, "coherent amplitude (real)");
  trace->add_option("--omega", f.omega, "reference weight");
  trace->add_option("--mismatch", f.mismatch, "H11 / H22 ratio of the mismatched trace");
  trace->add_option("--horizon", f.horizon, "final time");
  trace->add_option("--step", f.step, "time grid step");

  auto* scaling = app.add_subcommand("scaling", "transfer time and iteration count versus n");
  add_common(scaling, f);
  scaling->add_option("--n-values", f.n_values, "target levels; alpha = sqrt(n)");
  scaling->add_option("--omega", f.omega, "reference weight");
  scaling->add_flag("--no-iterations", f.no_iterations, "skip the iteration-count scan");
  add_optimizer(scaling, f);

  auto* superpose = app.add_subcommand("superpose", "prepare a Fock superposition");
  add_common(superpose, f);
  superpose->add_option("--preset", f.preset, "phi1, phi2 or phi3");
  superpose->add_option("--component", f.components, "level:weight[:phase], repeatable");
  superpose->add_option("--alpha", f.alpha, "coherent amplitude (real)");
  add_optimizer(superpose, f);

  auto* opt = app.add_subcommand("optimize", "optimize the discrete protocol for a target");
  add_common(opt, f);
  opt->add_option("--n", f.n, "target Fock level");
  opt->add_option("--component", f.components, "level:weight[:phase], repeatable");
  opt->add_option("--alpha", f.alpha, "coherent amplitude (real)");
  add_optimizer(opt, f);

  auto* exp = app.add_subcommand("export-gates", "compile saved parameters to a gate program");
  add_common(exp, f);
  exp->add_option("--params", f.params, "params.json from optimize or superpose");

  auto* plot = app.add_subcommand("plot", "render CSV tables as an SVG line chart");
  add_common(plot, f);
  plot->add_option("--input", f.inputs, "CSV file, repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const ExperimentConfig cfg = resolve(f);
    if (*trace) return cmd_trace(cfg);
    if (*scaling) return cmd_scaling(cfg);
    if (*superpose) {
      if (cfg.preset.empty() && cfg.components.empty()) throw DomainError("superpose needs --preset or --component");
      return cmd_prepare(cfg);
    }
    if (*opt) return cmd_prepare(cfg);
    if (*exp) return cmd_export(cfg);
    if (*plot) return cmd_plot(cfg);
  } catch (const IoError& e) {
    std::fprintf(stderr, "rse: %s\n", e.what());
    return kExitIo;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "rse: %s\n", e.what());
    return kExitConfig;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "rse: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
