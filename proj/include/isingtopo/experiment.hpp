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

#pragma once

// Experiment configs and the run driver behind the command-line tool.
//
// Config files are flat "key = value" text; '#' starts a comment. Lists are
// comma separated, and numeric lists also accept "start:step:stop".
//
//   kind             optimize | correlator | ybar | energy-scan | zne
//   L                chain length(s)
//   b                0 (open) or 1 (periodic)
//   v                impurity strength(s); "inf" selects the duality defect
//   j                defect bond (1-based), default ("auto") L/2
//   layers           ansatz layers, default ("auto") L/2
//   eta              learning rate (0.05)
//   tikhonov         metric regularization (1e-4)
//   max_iters        optimizer iteration cap (2000)
//   target_rel_error oracle stopping threshold (1e-3)
//   oracle           stop on the exact-diagonalization target (true)
//   state            circuit | exact: state measured by correlator/ybar
//   shots, runs      per-circuit shots and repetitions
//                    (correlator 10 x 8192, otherwise 5 x 1024)
//   analytic         infinite-shot estimates (false)
//   seed             master seed (1)
//   zne              apply zero-noise extrapolation to optimize runs (false)
//   p2, p1           depolarizing probabilities (0.01, 0)
//   zne_factors      noise factors (1.0:0.2:3.0)
//   zne_degree       polynomial degree (2)
//   trajectories     noise trajectories per factor (10000)

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isingtopo/shotproto.hpp"
#include "isingtopo/zne.hpp"

namespace isingtopo {

enum class ExperimentKind { kOptimize, kCorrelator, kYbar, kEnergyScan, kZne };

std::string to_string(ExperimentKind kind);

enum class StateSource { kCircuit, kExact };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kOptimize;
  std::vector<int> L{12};
  int b = 0;
  std::vector<double> v{0.0};
  std::optional<int> j;
  std::optional<int> layers;
  double eta = 0.05;
  double tikhonov = 1e-4;
  int max_iters = 2000;
  double target_rel_error = 1e-3;
  bool oracle = true;
  StateSource state = StateSource::kCircuit;
  std::optional<std::int64_t> shots;
  std::optional<int> runs;
  bool analytic = false;
  std::uint64_t seed = 1;
  bool zne = false;
  NoiseModel noise;
  ZneSchedule schedule;
  int trajectories = 10000;

  std::int64_t resolved_shots() const;
  int resolved_runs() const;
  int resolved_j(int L) const { return j.value_or(L / 2); }
  int resolved_layers(int L) const { return layers.value_or(std::max(1, L / 2)); }
};

// Throws Error(kInvalidArgument) naming the offending line and key.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
// Applies one "key = value" assignment.
void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);
// Resolved config in canonical key order; the config hash is taken over it.
std::string canonical_config(const ExperimentConfig& cfg);

struct Diagnostic {
  std::string field;
  std::string message;
};

// All violations, without side effects.
std::vector<Diagnostic> validate(const ExperimentConfig& cfg);

struct RunOptions {
  std::filesystem::path out_dir = "run";
  bool write_files = true;
  bool dump_hamiltonian = false;
  bool dump_state = false;
};

struct RunRecord {
  std::string record_json;   // the record.json manifest
  std::string summary;       // human-readable table
  std::string config_hash;   // git blob SHA-1 of the canonical config
  std::string outputs_hash;  // SHA-1 of the serialized outputs
  bool converged = true;     // false if any optimization missed its target
  std::vector<std::string> files;
};

// Validates, runs, writes outputs under opts.out_dir. Throws
// Error(kInvalidArgument) listing diagnostics when the config is invalid.
RunRecord run_experiment(const ExperimentConfig& cfg, const RunOptions& opts);

// Hex SHA-1 of "blob <size>\0<content>".
std::string git_blob_hash(std::string_view content);

}  // namespace isingtopo
