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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>

#include "experiment.hpp"
#include "oracles.hpp"
#include "svg.hpp"

using namespace rse;
using namespace rse::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rse_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RSE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("config resolution and validation") {
  ExperimentConfig cfg;
  CHECK(cfg.resolved_components().size() == 1);
  CHECK(cfg.resolved_alpha() == Complex(10.0));
  cfg.preset = "phi2";
  CHECK(cfg.resolved_components().size() == 3);
  CHECK(cfg.resolved_alpha() == Complex(std::sqrt(88.0)));
  CHECK(preset_iterations("phi3") == 3u);
  CHECK_THROWS_AS(preset_components("phi9"), DomainError);

  for (const char* name : {"phi1", "phi2", "phi3"}) {
    double total = 0.0;
    for (const auto& c : preset_components(name)) total += c.weight;
    CHECK(std::abs(total - 1.0) < 1e-12);
  }

  ExperimentConfig bad;
  bad.components = {{70, 0.3, 0.0}, {100, 0.6, 0.0}};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad.components = {{70, 0.5, 0.0}, {70, 0.5, 0.0}};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad.components.clear();
  bad.step = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("JSON config overlays the defaults") {
  const auto cfg = merge_config_json(
      R"({"n": 50, "alpha": [3.0, 4.0], "components": [{"level": 5, "weight": 1.0}], "seed": 9, "horizon": 3})",
      ExperimentConfig{});
  CHECK(cfg.n == 50);
  CHECK(cfg.alpha == Complex(3.0, 4.0));
  CHECK(cfg.components.size() == 1);
  CHECK(cfg.seed == 9);
  CHECK(cfg.horizon == 3.0);
  CHECK(cfg.step == 0.01);
  CHECK(merge_config_json(R"({"alpha": 2.5})", ExperimentConfig{}).alpha == Complex(2.5));
  CHECK_THROWS_AS(merge_config_json(R"({"unknown": 1})", ExperimentConfig{}), DomainError);
  CHECK_THROWS_AS(merge_config_json("[1, 2]", ExperimentConfig{}), DomainError);
  CHECK_THROWS_AS(merge_config_json("{", ExperimentConfig{}), DomainError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/config.json", ExperimentConfig{}), IoError);
}

TEST_CASE("trace experiment with default settings") {
  const auto r = run_trace(ExperimentConfig{});
  CHECK(r.dim == 200);
  CHECK(r.matched.peak() >= 0.999);
  CHECK(r.mismatched.peak() == doctest::Approx(oracle::kMismatchedPeak100).epsilon(1e-4));
  CHECK(r.transfer_time == doctest::Approx(oracle::kTransfer100).epsilon(1e-10));
  CHECK(r.transfer_bound == doctest::Approx(oracle::kBound100).epsilon(1e-10));
  CHECK(r.transfer_bound == doctest::Approx(7.8677).epsilon(1e-4));
  CHECK(r.transfer_time == doctest::Approx(7.0016).epsilon(1e-3));
  REQUIRE(r.first_passage);
  CHECK(*r.first_passage == doctest::Approx(oracle::kTransfer100 - std::asin(std::sqrt(0.001)) / oracle::kCoupling100)
                                .epsilon(1e-6));
  CHECK(std::abs(r.peak_time - oracle::kTransfer100) <= 0.01);

  ExperimentConfig same;
  same.mismatch = 1.0;
  const auto s = run_trace(same);
  CHECK(trace_to_csv(s.matched) == trace_to_csv(s.mismatched));

  ExperimentConfig multi;
  multi.preset = "phi1";
  CHECK_THROWS_AS(run_trace(multi), DomainError);
}

TEST_CASE("scaling experiment") {
  ExperimentConfig cfg;
  cfg.n_values = {25, 50, 100, 200, 400};
  const auto r = run_scaling(cfg);
  REQUIRE(r.rows.size() == 5);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].transfer_time > r.rows[i - 1].transfer_time);
    CHECK(r.rows[i].transfer_bound > r.rows[i - 1].transfer_bound);
  }
  CHECK(r.bound_fit.exponent >= 0.20);
  CHECK(r.bound_fit.exponent <= 0.30);
  CHECK(r.rows[2].n == 100);
  REQUIRE(r.rows[2].min_iterations);
  CHECK(*r.rows[2].min_iterations == 4);

  cfg.scan_iterations = false;
  cfg.n_values = {400, 16, 100, 16};
  const auto quick = run_scaling(cfg);
  REQUIRE(quick.rows.size() == 3);
  CHECK(quick.rows.front().n == 16);
  CHECK_FALSE(quick.rows.front().min_iterations);
  CHECK_FALSE(quick.iteration_fit);
}

TEST_CASE("superposition preparation verifies in full space") {
  ExperimentConfig cfg;
  cfg.preset = "phi1";
  const auto r = run_preparation(cfg);
  CHECK(r.record.params.iterations() == 5);
  CHECK(r.full_fidelity >= 0.995);
  CHECK(std::abs(r.reduced_fidelity - r.full_fidelity) < 1e-9);
  CHECK(r.record.levels == std::vector<Level>{70, 100});

  ExperimentConfig unreachable;
  unreachable.components = {{3, 1.0, 0.0}};
  unreachable.alpha = Complex(20.0);
  CHECK_THROWS_AS(run_preparation(unreachable), DomainError);
}

TEST_CASE("gate export round trip and re-simulation") {
  const fs::path dir = scratch("export");
  ExperimentConfig prep;
  prep.preset = "phi3";
  prep.out = dir.string();
  const auto r = run_preparation(prep);
  write_preparation(r, prep);

  ExperimentConfig cfg;
  cfg.params_path = (dir / "params.json").string();
  cfg.out = (dir / "export").string();
  const auto e = run_export(cfg);
  CHECK(e.round_trip);
  CHECK(e.gates == r.gates);
  REQUIRE(e.resimulated_fidelity);
  CHECK(std::abs(*e.resimulated_fidelity - e.recorded_fidelity) < 1e-9);
  write_export(e, cfg);
  CHECK(read_file((dir / "export" / "gates.txt").string()) == read_file((dir / "gates.txt").string()));

  ParamsRecord empty;
  empty.params = ProtocolParams::zeros(0, 1, false);
  empty.alpha = 2.0;
  empty.levels = {4};
  write_file((dir / "empty.json").string(), params_to_json(empty));
  cfg.params_path = (dir / "empty.json").string();
  const auto z = run_export(cfg);
  CHECK(z.gates.empty());
  CHECK(to_text(z.gates).empty());
  CHECK(z.round_trip);

  cfg.params_path.clear();
  CHECK_THROWS_AS(run_export(cfg), DomainError);
}

TEST_CASE("SVG rendering") {
  const std::string svg = render_svg({{"s", {0.0, 1.0}, {0.5, 0.7}}}, {"title", "x", "y"});
  CHECK(count(svg, "<polyline") == 1);
  const auto start = svg.find("points=\"") + 8;
  const auto points = svg.substr(start, svg.find('"', start) - start);
  CHECK(count(points, ",") == 2);
  CHECK(count(points, " ") == 1);
  CHECK(render_svg({{"s", {0.0, 1.0}, {0.5, 0.7}}}, {"title", "x", "y"}) == svg);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);

  const std::string two = render_svg({{"a", {0, 1, 2}, {0, 1, 0}}, {"b", {0, 1, 2}, {1, 0, 1}}}, {"", "t", ""});
  CHECK(count(two, "<polyline") == 2);
  CHECK(render_svg({{"<&>", {1.0}, {1.0}}}, {}).find("&lt;&amp;&gt;") != std::string::npos);

  CHECK_THROWS_AS(render_svg({}, {}), DomainError);
  CHECK_THROWS_AS(render_svg({{"e", {}, {}}}, {}), DomainError);
}

TEST_CASE("CSV series parsing") {
  const auto s = series_from_csv("n,a,b\n1,2,\n2,3,4\r\n3,,5\n");
  REQUIRE(s.size() == 2);
  CHECK(s[0].name == "a");
  CHECK(s[0].x == std::vector<double>{1, 2});
  CHECK(s[1].y == std::vector<double>{4, 5});
  CHECK(series_from_csv("t,fidelity\n").empty());
  CHECK(series_from_csv("").empty());
  CHECK_THROWS_AS(series_from_csv("t,f\n1,x\n"), DomainError);
  CHECK_THROWS_AS(series_from_csv("t\n1\n"), DomainError);
}

TEST_CASE("command-line exit codes and reproducibility") {
  const fs::path dir = scratch("binary");
  const std::string a = (dir / "a").string();
  const std::string b = (dir / "b").string();
  CHECK(run_cli("trace --out " + a) == kExitOk);
  CHECK(run_cli("trace --out " + b) == kExitOk);
  for (const char* f : {"matched.csv", "mismatched.csv", "summary.json", "traces.svg"}) {
    CHECK(read_file((dir / "a" / f).string()) == read_file((dir / "b" / f).string()));
  }

  const std::string sc1 = (dir / "sc1").string();
  const std::string sc2 = (dir / "sc2").string();
  CHECK(run_cli("scaling --n-values 16 64 100 --seed 3 --out " + sc1) == kExitOk);
  CHECK(run_cli("scaling --n-values 16 64 100 --seed 3 --out " + sc2) == kExitOk);
  CHECK(read_file(sc1 + "/scaling.csv") == read_file(sc2 + "/scaling.csv"));

  CHECK(run_cli("plot --input " + a + "/matched.csv --input " + a + "/mismatched.csv --out " + a) == kExitOk);
  CHECK(count(read_file(a + "/plot.svg"), "<polyline") == 2);
  write_file((dir / "empty.csv").string(), "t,fidelity\n");
  CHECK(run_cli("plot --input " + (dir / "empty.csv").string() + " --out " + a) == kExitConfig);

  CHECK(run_cli("trace --mismatch -1 --out " + a) == kExitConfig);
  CHECK(run_cli("trace --no-such-flag") == kExitConfig);
  CHECK(run_cli("superpose --out " + a) == kExitConfig);
  CHECK(run_cli("superpose --component 70:0.5 --component 100:0.4 --out " + a) == kExitConfig);
  CHECK(run_cli("trace --config " + (dir / "missing.json").string()) == kExitIo);
  CHECK(run_cli("plot --input " + (dir / "missing.csv").string() + " --out " + a) == kExitIo);
  write_file((dir / "blocker").string(), "x");
  CHECK(run_cli("trace --out " + (dir / "blocker" / "sub").string()) == kExitIo);

  CHECK(run_cli("trace --require-fidelity 0.999 --out " + a) == kExitOk);
  CHECK(run_cli("superpose --preset phi3 --iterations 1 --require-fidelity 0.99 --out " + a) == kExitThreshold);

  const std::string cfg = (dir / "cfg.json").string();
  write_file(cfg, R"({"preset": "phi2", "seed": 5})");
  CHECK(run_cli("superpose --config " + cfg + " --out " + a + " --require-fidelity 0.995") == kExitOk);
  CHECK(run_cli("export-gates --params " + a + "/params.json --out " + a + "/exp --require-fidelity 0.995") ==
        kExitOk);
  fs::remove_all(dir.parent_path());
}
