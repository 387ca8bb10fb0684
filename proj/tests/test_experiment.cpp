// Copyright 2026 The isingtopo Authors
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

#include <filesystem>
#include <fstream>
#include <limits>

#include "doctest.h"
#include "isingtopo/experiment.hpp"
#include "json.hpp"

using namespace isingtopo;

namespace {

bool has_field(const std::vector<Diagnostic>& d, const std::string& field, const std::string& text = {}) {
  for (const auto& x : d) {
    if (x.field == field && x.message.find(text) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("config parsing: lists, ranges, comments and inf") {
  const auto cfg = parse_config(
      "# comment\n"
      "kind = correlator   # trailing comment\n"
      "L = 8, 10\n"
      "v = 0, 0.5:0.5:1.5, inf\n"
      "b = 1\n"
      "j = 3\n"
      "shots = 100\n"
      "analytic = yes\n"
      "zne_factors = 1.0:0.5:2.0\n");
  CHECK(cfg.kind == ExperimentKind::kCorrelator);
  CHECK(cfg.L == std::vector<int>{8, 10});
  REQUIRE(cfg.v.size() == 5);
  CHECK(cfg.v[2] == 1.0);
  CHECK(cfg.v[3] == 1.5);
  CHECK(cfg.v[4] == std::numeric_limits<double>::infinity());
  CHECK(cfg.b == 1);
  CHECK(cfg.j == 3);
  CHECK(cfg.resolved_shots() == 100);
  CHECK(cfg.resolved_runs() == 10);
  CHECK(cfg.analytic);
  CHECK(cfg.schedule.factors == std::vector<double>{1.0, 1.5, 2.0});
}

TEST_CASE("range endpoints are reproduced exactly") {
  const auto cfg = parse_config("zne_factors = 1.0:0.2:3.0\n");
  CHECK(cfg.schedule.factors == default_zne_factors());
}

TEST_CASE("config errors name the line and key") {
  CHECK_THROWS_WITH_AS(parse_config("L = 4\nfoo = 1\n"), doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(parse_config("L = four\n"), doctest::Contains("'L'"), Error);
  CHECK_THROWS_AS(parse_config("kind = plot\n"), Error);
  CHECK_THROWS_AS(parse_config("L 4\n"), Error);
  CHECK_THROWS_AS(parse_config("v = 1:-1:0\n"), Error);
  CHECK_THROWS_AS(parse_config("oracle = maybe\n"), Error);
  CHECK_THROWS_AS(load_config("/nonexistent/config.cfg"), Error);
}

TEST_CASE("per-kind shot defaults") {
  ExperimentConfig cfg;
  CHECK(cfg.resolved_shots() == 1024);
  CHECK(cfg.resolved_runs() == 5);
  cfg.kind = ExperimentKind::kCorrelator;
  CHECK(cfg.resolved_shots() == 8192);
  CHECK(cfg.resolved_runs() == 10);
  CHECK(cfg.resolved_layers(12) == 6);
  CHECK(cfg.resolved_j(12) == 6);
  CHECK(cfg.eta == 0.05);
}

TEST_CASE("validation diagnostics") {
  CHECK(validate(parse_config("L = 12\n")).empty());
  CHECK(has_field(validate(parse_config("L = 15\noracle = true\nlayers = 7\n")), "L", "oracle range exceeded"));
  CHECK(has_field(validate(parse_config("L = 15\n")), "layers", "even"));
  CHECK(has_field(validate(parse_config("shots = -5\n")), "shots"));
  CHECK(has_field(validate(parse_config("runs = 0\n")), "runs"));
  CHECK(has_field(validate(parse_config("b = 2\n")), "b"));
  CHECK(has_field(validate(parse_config("L = 6\nj = 6\n")), "j"));
  CHECK(validate(parse_config("L = 6\nj = 6\nb = 1\n")).empty());
  CHECK(has_field(validate(parse_config("eta = 0\n")), "eta"));
  CHECK(has_field(validate(parse_config("p2 = 1.5\n")), "p2"));
  CHECK(has_field(validate(parse_config("zne_factors = 1, 2\n")), "zne_factors"));
  CHECK(has_field(validate(parse_config("kind = energy-scan\nv = inf\n")), "v"));
  // Several violations are reported together.
  CHECK(validate(parse_config("shots = 0\nruns = 0\neta = -1\n")).size() == 3);
  // Without the oracle, large chains are allowed.
  CHECK(validate(parse_config("L = 16\noracle = false\n")).empty());
}

TEST_CASE("canonical config is stable and hashes like git") {
  CHECK(git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(git_blob_hash("kind = optimize\n") == "cc3415e0f7b625d862d7d8df861fb2680b8b68f8");
  const auto a = canonical_config(parse_config("L = 4\nv = 0\n"));
  const auto b = canonical_config(parse_config("v = 0.0\nL=4\n# same config\n"));
  CHECK(a == b);
  CHECK(canonical_config(parse_config(a)) == a);
}

TEST_CASE("identical config and seed reproduce the run record") {
  const auto cfg = parse_config("kind = optimize\nL = 4\nv = 0, 4\nb = 1\nzne = true\ntrajectories = 50\n");
  RunOptions opts;
  opts.write_files = false;
  const auto a = run_experiment(cfg, opts);
  const auto b = run_experiment(cfg, opts);
  CHECK(a.converged);
  CHECK(a.config_hash == b.config_hash);
  CHECK(a.outputs_hash == b.outputs_hash);
  auto ja = nlohmann::json::parse(a.record_json);
  auto jb = nlohmann::json::parse(b.record_json);
  ja.erase("wall_time_s");
  jb.erase("wall_time_s");
  CHECK(ja == jb);
  CHECK(ja["status"] == "ok");
  CHECK(ja["outputs"]["L4_v0"]["rel_error"].get<double>() < 1e-3);
  auto other = cfg;
  other.seed = 2;
  CHECK(run_experiment(other, opts).outputs_hash != a.outputs_hash);
}

TEST_CASE("runs write every declared file under the output directory") {
  const auto dir = std::filesystem::temp_directory_path() / "isingtopo_test_run";
  std::filesystem::remove_all(dir);
  RunOptions opts;
  opts.out_dir = dir;
  opts.dump_hamiltonian = true;
  opts.dump_state = true;
  for (const char* text : {"kind = correlator\nL = 6\nv = 0\nstate = exact\n", "kind = ybar\nL = 4\nb = 1\n",
                           "kind = energy-scan\nL = 4\nv = 0:1:2\n",
                           "kind = zne\nL = 4\nv = 0\ntrajectories = 20\n"}) {
    const auto rec = run_experiment(parse_config(text), opts);
    for (const auto& f : rec.files) CHECK(std::filesystem::exists(dir / f));
    CHECK(!rec.summary.empty());
  }
  std::ifstream in(dir / "ybar_L4_v0.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(std::abs(j["exact"].get<double>()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(std::filesystem::file_size(dir / "state_L4_v0.bin") == 16 * 16);
  std::filesystem::remove_all(dir);
}

TEST_CASE("invalid configs are rejected before any work") {
  RunOptions opts;
  opts.write_files = false;
  CHECK_THROWS_WITH_AS(run_experiment(parse_config("L = 15\n"), opts), doctest::Contains("oracle range"), Error);
}
