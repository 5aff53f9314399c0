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

#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "svg.hpp"

namespace rse::cli {

using nlohmann::json;

namespace {

constexpr double kPassageThreshold = 0.999;

struct Scenario {
  FockSpace space;
  SubspaceModel model;
  std::vector<Level> levels;
  CVector coords;  ///< target in subspace coordinates
  BosonicState target;
};

Complex component_amplitude(const Component& c) { return std::polar(std::sqrt(c.weight), c.phase); }

Scenario make_scenario(const std::vector<Component>& comps, Complex alpha, std::optional<std::size_t> dim) {
  Level top = 0;
  for (const auto& c : comps) top = std::max(top, c.level);
  const FockSpace space(dim ? *dim : recommended_dim(alpha, top));
  if (top >= space.dim()) throw DomainError("target level exceeds the truncation dimension");
  std::vector<BosonicState> targets;
  std::vector<Level> levels;
  CVector coords = CVector::Zero(static_cast<Eigen::Index>(comps.size() + 1));
  CVector full = CVector::Zero(static_cast<Eigen::Index>(space.dim()));
  for (std::size_t k = 0; k < comps.size(); ++k) {
    targets.push_back(fock_state(space, comps[k].level));
    levels.push_back(comps[k].level);
    coords[static_cast<Eigen::Index>(k)] = component_amplitude(comps[k]);
    full[static_cast<Eigen::Index>(comps[k].level)] = component_amplitude(comps[k]);
  }
  auto model = build_subspace(std::move(targets), coherent_state(space, alpha));
  return {space, std::move(model), std::move(levels), std::move(coords), BosonicState(space, full)};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 2) throw DomainError("config: complex values are a number or [re, im]");
  return {v[0], v[1]};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<Component> preset_components(const std::string& name) {
  if (name == "phi1") return {{70, 0.3, 0.0}, {100, 0.7, 0.0}};
  if (name == "phi2") return {{70, 0.2, 0.0}, {85, 0.5, 0.0}, {100, 0.3, 0.0}};
  if (name == "phi3") return {{70, 0.1, 0.0}, {80, 0.3, 0.0}, {90, 0.4, 0.0}, {100, 0.2, 0.0}};
  throw DomainError("unknown preset '" + name + "' (expected phi1, phi2 or phi3)");
}

std::optional<std::size_t> preset_iterations(const std::string& name) {
  if (name == "phi1") return 5;
  if (name == "phi2") return 4;
  if (name == "phi3") return 3;
  return std::nullopt;
}

std::vector<Component> ExperimentConfig::resolved_components() const {
  if (!preset.empty()) return preset_components(preset);
  if (!components.empty()) return components;
  return {{n, 1.0, 0.0}};
}

Complex ExperimentConfig::resolved_alpha() const {
  if (alpha) return *alpha;
  if (!preset.empty()) return std::sqrt(88.0);
  double mean = 0.0;
  for (const auto& c : resolved_components()) mean += c.weight * static_cast<double>(c.level);
  return std::sqrt(mean);
}

OptimizerConfig ExperimentConfig::optimizer_config() const {
  OptimizerConfig oc;
  oc.restarts = restarts;
  oc.max_evals = max_evals;
  oc.seed = seed;
  return oc;
}

void ExperimentConfig::validate() const {
  const auto comps = resolved_components();
  double total = 0.0;
  std::set<Level> seen;
  for (const auto& c : comps) {
    if (!(c.weight > 0.0) || !std::isfinite(c.phase)) throw DomainError("component weights must be positive");
    if (!seen.insert(c.level).second) throw DomainError("component levels must be distinct");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("component weights must sum to 1");
  if (alpha && !std::isfinite(std::abs(*alpha))) throw DomainError("alpha must be finite");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("omega must be positive");
  if (!(mismatch > 0.0) || !std::isfinite(mismatch)) throw DomainError("mismatch must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("horizon must be positive");
  if (!(step > 0.0) || step > horizon) throw DomainError("step must lie in (0, horizon]");
  if (iterations && *iterations == 0) throw DomainError("iterations must be at least 1");
  if (max_iterations == 0) throw DomainError("max_iterations must be at least 1");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw DomainError("threshold must lie in (0, 1]");
  if (restarts == 0 || max_evals == 0) throw DomainError("optimizer budget must be positive");
  if (n_values.empty()) throw DomainError("n_values must not be empty");
  for (Level v : n_values)
    if (v == 0) throw DomainError("n_values must be positive");
  if (dim && *dim == 0) throw DomainError("dim must be positive");
  if (require_fidelity && !(*require_fidelity >= 0.0 && *require_fidelity <= 1.0)) {
    throw DomainError("require_fidelity must lie in [0, 1]");
  }
}

ExperimentConfig merge_config_json(const std::string& text, ExperimentConfig cfg) {
  static const std::set<std::string> kKeys = {
      "experiment", "n",         "components", "preset",   "alpha",      "omega",          "mismatch",
      "horizon",    "step",      "iterations", "max_iterations", "threshold", "restarts",   "max_evals",
      "seed",       "n_values",  "scan_iterations", "dim", "require_fidelity", "out",     "params",
      "inputs"};
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw DomainError("config: top level must be an object");
    for (const auto& [key, value] : doc.items()) {
      if (!kKeys.count(key)) throw DomainError("config: unknown field '" + key + "'");
    }
    if (doc.contains("n")) cfg.n = doc["n"].get<Level>();
    if (doc.contains("components")) {
      cfg.components.clear();
      for (const auto& c : doc["components"]) {
        cfg.components.push_back({c.at("level").get<Level>(), c.at("weight").get<double>(), c.value("phase", 0.0)});
      }
    }
    if (doc.contains("preset")) cfg.preset = doc["preset"].get<std::string>();
    if (doc.contains("alpha")) cfg.alpha = complex_from_json(doc["alpha"]);
    if (doc.contains("omega")) cfg.omega = doc["omega"].get<double>();
    if (doc.contains("mismatch")) cfg.mismatch = doc["mismatch"].get<double>();
    if (doc.contains("horizon")) cfg.horizon = doc["horizon"].get<double>();
    if (doc.contains("step")) cfg.step = doc["step"].get<double>();
    if (doc.contains("iterations")) cfg.iterations = doc["iterations"].get<std::size_t>();
    if (doc.contains("max_iterations")) cfg.max_iterations = doc["max_iterations"].get<std::size_t>();
    if (doc.contains("threshold")) cfg.threshold = doc["threshold"].get<double>();
    if (doc.contains("restarts")) cfg.restarts = doc["restarts"].get<std::size_t>();
    if (doc.contains("max_evals")) cfg.max_evals = doc["max_evals"].get<std::size_t>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("n_values")) cfg.n_values = doc["n_values"].get<std::vector<Level>>();
    if (doc.contains("scan_iterations")) cfg.scan_iterations = doc["scan_iterations"].get<bool>();
    if (doc.contains("dim")) cfg.dim = doc["dim"].get<std::size_t>();
    if (doc.contains("require_fidelity")) cfg.require_fidelity = doc["require_fidelity"].get<double>();
    if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
    if (doc.contains("params")) cfg.params_path = doc["params"].get<std::string>();
    if (doc.contains("inputs")) cfg.inputs = doc["inputs"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  return merge_config_json(read_file(path), std::move(base));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("error writing " + path);
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

// ---------------------------------------------------------------- trace

TraceReport run_trace(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto comps = cfg.resolved_components();
  if (comps.size() != 1) throw DomainError("trace needs a single target level");
  const Complex alpha = cfg.resolved_alpha();
  const Scenario s = make_scenario(comps, alpha, cfg.dim);
  const Level n = comps[0].level;

  // Both Hamiltonians go through the same formula, so mismatch = 1 reproduces
  // the matched trace bit for bit.
  const auto matched_h = reduced_hamiltonian(s.model, cfg.omega, {detuned_weight(s.model, cfg.omega, 1.0)});
  const auto mismatched_h =
      reduced_hamiltonian(s.model, cfg.omega, {detuned_weight(s.model, cfg.omega, cfg.mismatch)});
  SequenceSimulator sim(s.space);
  const BosonicState start = sim.run(pre_rotation_gate(n), s.model.reference());
  const BosonicState target = fock_state(s.space, n);

  const ContinuousEvolver matched(s.model, matched_h, start);
  const ContinuousEvolver mismatched(s.model, mismatched_h, start);
  const auto grid = uniform_grid(0.0, cfg.horizon, cfg.step);

  TraceReport r;
  r.matched = fidelity_trace(matched, target, grid);
  r.mismatched = fidelity_trace(mismatched, target, grid);
  r.first_passage =
      first_passage(r.matched, kPassageThreshold, [&](double t) { return matched.fidelity_at(t, target); });
  const auto peak = std::max_element(r.matched.values.begin(), r.matched.values.end());
  r.peak_time = r.matched.times[static_cast<std::size_t>(peak - r.matched.values.begin())];
  const auto tt = transfer_time(s.model, matched_h);
  r.transfer_time = tt.time;
  r.transfer_bound = tt.bound;
  r.dim = s.space.dim();
  return r;
}

void write_trace(const TraceReport& r, const ExperimentConfig& cfg) {
  const auto comps = cfg.resolved_components();
  write_file(join_path(cfg.out, "matched.csv"), trace_to_csv(r.matched));
  write_file(join_path(cfg.out, "mismatched.csv"), trace_to_csv(r.mismatched));

  json doc;
  doc["n"] = comps[0].level;
  doc["alpha"] = complex_json(cfg.resolved_alpha());
  doc["omega"] = cfg.omega;
  doc["mismatch"] = cfg.mismatch;
  doc["horizon"] = cfg.horizon;
  doc["step"] = cfg.step;
  doc["dim"] = r.dim;
  doc["matched_peak"] = r.matched.peak();
  doc["mismatched_peak"] = r.mismatched.peak();
  doc["peak_gap"] = r.matched.peak() - r.mismatched.peak();
  doc["peak_time"] = r.peak_time;
  doc["first_passage_threshold"] = kPassageThreshold;
  doc["first_passage"] = optional_json(r.first_passage);
  doc["transfer_time"] = r.transfer_time;
  doc["transfer_bound"] = r.transfer_bound;
  doc["first_passage_relative_deviation"] =
      r.first_passage ? json(std::abs(*r.first_passage - r.transfer_time) / r.transfer_time) : json(nullptr);
  write_file(join_path(cfg.out, "summary.json"), doc.dump(2) + "\n");

  const std::vector<Series> series = {{"matched", r.matched.times, r.matched.values},
                                      {"mismatched", r.mismatched.times, r.mismatched.values}};
  write_file(join_path(cfg.out, "traces.svg"), render_svg(series, {"Resonant transfer", "t", "fidelity"}));
}

// -------------------------------------------------------------- scaling

ScalingReport run_scaling(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<Level> ns = cfg.n_values;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  const double threshold = cfg.require_fidelity.value_or(cfg.threshold);

  ScalingReport report;
  for (Level n : ns) {
    const Complex alpha = std::sqrt(static_cast<double>(n));
    const Scenario s = make_scenario({{n, 1.0, 0.0}}, alpha, std::nullopt);
    const auto h = reduced_hamiltonian(s.model, cfg.omega, {resonance_weight(s.model, cfg.omega)});
    const auto tt = transfer_time(s.model, h);
    ScalingRow row{n, tt.time, tt.bound, std::nullopt};
    if (cfg.scan_iterations) {
      row.min_iterations =
          minimal_iterations(s.model, s.coords, cfg.max_iterations, threshold, cfg.optimizer_config()).iterations;
    }
    report.rows.push_back(row);
  }

  std::vector<std::pair<double, double>> times, bounds, counts;
  bool all_counts = cfg.scan_iterations;
  for (const auto& row : report.rows) {
    times.emplace_back(static_cast<double>(row.n), row.transfer_time);
    bounds.emplace_back(static_cast<double>(row.n), row.transfer_bound);
    if (row.min_iterations) {
      counts.emplace_back(static_cast<double>(row.n), static_cast<double>(*row.min_iterations));
    } else {
      all_counts = false;
    }
  }
  report.time_fit = fit_scaling_exponent(times);
  report.bound_fit = fit_scaling_exponent(bounds);
  if (all_counts) report.iteration_fit = fit_scaling_exponent(counts);
  return report;
}

void write_scaling(const ScalingReport& r, const ExperimentConfig& cfg) {
  std::string csv = "n,T_transfer,T_bound,N_min\n";
  for (const auto& row : r.rows) {
    csv += std::to_string(row.n) + "," + csv_number(row.transfer_time) + "," + csv_number(row.transfer_bound) + ",";
    if (row.min_iterations) csv += std::to_string(*row.min_iterations);
    csv += "\n";
  }
  write_file(join_path(cfg.out, "scaling.csv"), csv);

  auto fit_json = [](const PowerLawFit& f) { return json{{"exponent", f.exponent}, {"intercept", f.intercept}}; };
  json doc;
  doc["n_values"] = json::array();
  for (const auto& row : r.rows) doc["n_values"].push_back(row.n);
  doc["T_transfer"] = fit_json(r.time_fit);
  doc["T_bound"] = fit_json(r.bound_fit);
  doc["N_min"] = r.iteration_fit ? fit_json(*r.iteration_fit) : json(nullptr);
  doc["threshold"] = cfg.require_fidelity.value_or(cfg.threshold);
  doc["seed"] = cfg.seed;
  doc["restarts"] = cfg.restarts;
  write_file(join_path(cfg.out, "scaling_fit.json"), doc.dump(2) + "\n");

  Series t{"T_transfer", {}, {}}, b{"T_bound", {}, {}};
  for (const auto& row : r.rows) {
    t.x.push_back(static_cast<double>(row.n));
    t.y.push_back(row.transfer_time);
    b.x.push_back(static_cast<double>(row.n));
    b.y.push_back(row.transfer_bound);
  }
  write_file(join_path(cfg.out, "scaling.svg"), render_svg({t, b}, {"Transfer time versus n", "n", "time"}));
}

// ---------------------------------------------------------- preparation

PreparationReport run_preparation(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto comps = cfg.resolved_components();
  const Complex alpha = cfg.resolved_alpha();
  const Scenario s = make_scenario(comps, alpha, cfg.dim);
  const OptimizerConfig oc = cfg.optimizer_config();

  PreparationReport report;
  std::optional<std::size_t> iterations = cfg.iterations;
  if (!iterations && !cfg.preset.empty()) iterations = preset_iterations(cfg.preset);
  OptimizeResult best;
  if (iterations) {
    best = optimize(s.model, s.coords, *iterations, oc);
  } else {
    auto scan = minimal_iterations(s.model, s.coords, cfg.max_iterations, cfg.threshold, oc);
    report.scan = scan.best_fidelity;
    best = scan.result ? *scan.result : optimize(s.model, s.coords, cfg.max_iterations, oc);
  }

  report.gates = discrete_protocol(best.params, alpha, s.levels);
  SequenceSimulator sim(s.space);
  report.full_fidelity = fidelity(s.target, sim.run(report.gates, s.model.reference()));
  report.reduced_fidelity = best.fidelity;
  report.dim = s.space.dim();

  ParamsRecord& rec = report.record;
  rec.params = best.params;
  rec.achieved_fidelity = best.fidelity;
  rec.seed = cfg.seed;
  rec.alpha = alpha;
  rec.levels = s.levels;
  for (const auto& c : comps) rec.target_amplitudes.push_back(component_amplitude(c));
  return report;
}

void write_preparation(const PreparationReport& r, const ExperimentConfig& cfg) {
  write_file(join_path(cfg.out, "params.json"), params_to_json(r.record));
  write_file(join_path(cfg.out, "gates.txt"), to_text(r.gates));

  json doc;
  doc["levels"] = r.record.levels;
  json target = json::array();
  for (Complex a : r.record.target_amplitudes) target.push_back(complex_json(a));
  doc["target"] = std::move(target);
  doc["alpha"] = complex_json(r.record.alpha);
  doc["N"] = r.record.params.iterations();
  doc["dim"] = r.dim;
  doc["seed"] = cfg.seed;
  doc["restarts"] = cfg.restarts;
  doc["reduced_fidelity"] = r.reduced_fidelity;
  doc["full_fidelity"] = r.full_fidelity;
  doc["difference"] = std::abs(r.reduced_fidelity - r.full_fidelity);
  doc["gate_count"] = r.gates.size();
  if (!r.scan.empty()) doc["scan"] = r.scan;
  write_file(join_path(cfg.out, "report.json"), doc.dump(2) + "\n");
}

// --------------------------------------------------------------- export

ExportReport run_export(const ExperimentConfig& cfg) {
  if (cfg.params_path.empty()) throw DomainError("export-gates needs --params");
  const ParamsRecord rec = params_from_json(read_file(cfg.params_path));
  ExportReport r;
  r.gates = discrete_protocol(rec.params, rec.alpha, rec.levels);
  r.round_trip = parse_gate_sequence(to_text(r.gates)) == r.gates;
  r.recorded_fidelity = rec.achieved_fidelity;
  if (!rec.target_amplitudes.empty()) {
    std::vector<Component> comps;
    for (std::size_t k = 0; k < rec.levels.size(); ++k) {
      const Complex a = rec.target_amplitudes[k];
      comps.push_back({rec.levels[k], std::norm(a), std::arg(a)});
    }
    Level top = 0;
    for (Level l : rec.levels) top = std::max(top, l);
    const FockSpace space(cfg.dim ? *cfg.dim : recommended_dim(rec.alpha, std::max(top, max_snap_level(r.gates))));
    CVector full = CVector::Zero(static_cast<Eigen::Index>(space.dim()));
    for (std::size_t k = 0; k < rec.levels.size(); ++k) {
      if (rec.levels[k] >= space.dim()) throw DomainError("target level exceeds the truncation dimension");
      full[static_cast<Eigen::Index>(rec.levels[k])] = rec.target_amplitudes[k];
    }
    SequenceSimulator sim(space);
    r.resimulated_fidelity =
        fidelity(BosonicState(space, full).normalized(), sim.run(r.gates, coherent_state(space, rec.alpha)));
  }
  return r;
}

void write_export(const ExportReport& r, const ExperimentConfig& cfg) {
  write_file(join_path(cfg.out, "gates.txt"), to_text(r.gates));
  json doc;
  doc["gate_count"] = r.gates.size();
  doc["round_trip"] = r.round_trip;
  doc["recorded_fidelity"] = r.recorded_fidelity;
  doc["resimulated_fidelity"] = optional_json(r.resimulated_fidelity);
  doc["deviation"] = r.resimulated_fidelity ? json(std::abs(*r.resimulated_fidelity - r.recorded_fidelity))
                                            : json(nullptr);
  write_file(join_path(cfg.out, "export.json"), doc.dump(2) + "\n");
}

// ----------------------------------------------------------------- plot

std::string run_plot(const ExperimentConfig& cfg) {
  if (cfg.inputs.empty()) throw DomainError("plot needs at least one --input");
  std::vector<Series> all;
  std::string x_label;
  for (const auto& path : cfg.inputs) {
    const std::string text = read_file(path);
    if (x_label.empty()) x_label = text.substr(0, text.find_first_of(",\n"));
    auto series = series_from_csv(text);
    const std::string stem = std::filesystem::path(path).stem().string();
    for (auto& s : series) {
      if (cfg.inputs.size() > 1) s.name = s.name == "fidelity" ? stem : stem + ":" + s.name;
      all.push_back(std::move(s));
    }
  }
  if (all.empty()) throw DomainError("plot: input contains no data");
  return render_svg(all, {"", x_label, ""});
}

}  // namespace rse::cli
