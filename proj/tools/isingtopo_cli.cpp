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

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "isingtopo/isingtopo.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitInternal = 3;

int exit_code(itopo_status s) {
  switch (s) {
    case ITOPO_OK: return kExitOk;
    case ITOPO_ERR_INVALID_ARGUMENT:
    case ITOPO_ERR_VALIDATION: return kExitValidation;
    case ITOPO_ERR_NOT_CONVERGED: return kExitNotConverged;
    default: return kExitInternal;
  }
}

int report(itopo_status s) {
  std::fprintf(stderr, "isingtopo: %s\n", itopo_last_error());
  return exit_code(s);
}

// Loading failures other than an unreadable file count as validation errors.
int load(const std::string& path, itopo_config** cfg) {
  const itopo_status s = itopo_config_load(path.c_str(), cfg);
  if (s == ITOPO_OK) return kExitOk;
  std::fprintf(stderr, "isingtopo: %s\n", itopo_last_error());
  return s == ITOPO_ERR_INTERNAL ? kExitInternal : kExitValidation;
}

int print_diagnostics(const itopo_config* cfg) {
  itopo_diagnostics* diags = nullptr;
  const itopo_status s = itopo_config_validate(cfg, &diags);
  if (s != ITOPO_OK && s != ITOPO_ERR_VALIDATION) return report(s);
  const size_t n = itopo_diagnostics_count(diags);
  for (size_t k = 0; k < n; ++k) {
    std::fprintf(stderr, "%s: %s\n", itopo_diagnostics_field(diags, k), itopo_diagnostics_message(diags, k));
  }
  itopo_diagnostics_free(diags);
  return n == 0 ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational simulation of the transverse-field Ising chain with a duality defect"};
  app.set_version_flag("--version", std::string(itopo_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> shots;
  std::string out_dir = "run";
  bool analytic = false;
  bool dump_hamiltonian = false;
  bool dump_state = false;

  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  run->add_option("--shots", shots, "Override shots per run");
  run->add_flag("--analytic", analytic, "Infinite-shot estimates");
  run->add_flag("--dump-hamiltonian", dump_hamiltonian, "Write the serialized Hamiltonian");
  run->add_flag("--dump-state", dump_state, "Write final state amplitudes");

  auto* val = app.add_subcommand("validate", "Check a config file and list diagnostics");
  val->add_option("config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  itopo_config* cfg = nullptr;
  if (const int rc = load(config_path, &cfg); rc != kExitOk) return rc;

  if (val->parsed()) {
    const int rc = print_diagnostics(cfg);
    if (rc == kExitOk) std::printf("ok\n");
    itopo_config_free(cfg);
    return rc;
  }

  itopo_status s = ITOPO_OK;
  if (seed) s = itopo_config_set(cfg, "seed", std::to_string(*seed).c_str());
  if (s == ITOPO_OK && shots) s = itopo_config_set(cfg, "shots", std::to_string(*shots).c_str());
  if (s == ITOPO_OK && analytic) s = itopo_config_set(cfg, "analytic", "true");
  if (s != ITOPO_OK) {
    itopo_config_free(cfg);
    return report(s);
  }
  if (const int rc = print_diagnostics(cfg); rc != kExitOk) {
    itopo_config_free(cfg);
    return rc;
  }

  const itopo_run_options opts{out_dir.c_str(), 1, dump_hamiltonian ? 1 : 0, dump_state ? 1 : 0};
  itopo_record* rec = nullptr;
  s = itopo_run(cfg, &opts, &rec);
  itopo_config_free(cfg);
  if (rec) {
    std::fputs(itopo_record_summary(rec), stdout);
    std::printf("config hash %s, outputs in %s\n", itopo_record_config_hash(rec), out_dir.c_str());
    itopo_record_free(rec);
  }
  if (s != ITOPO_OK) return report(s);
  return kExitOk;
}
