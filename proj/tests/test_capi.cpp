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

// Exercises the shared library through its C interface only.

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "isingtopo/isingtopo.h"

TEST_CASE("version and error slot") {
  CHECK(std::string(itopo_version()) == "0.1.0");
  itopo_config* cfg = nullptr;
  CHECK(itopo_config_parse(nullptr, &cfg) == ITOPO_ERR_INVALID_ARGUMENT);
  CHECK(std::string(itopo_last_error()) == "null argument");
}

TEST_CASE("config lifecycle and validation") {
  itopo_config* cfg = nullptr;
  REQUIRE(itopo_config_parse("kind = optimize\nL = 4\n", &cfg) == ITOPO_OK);
  CHECK(itopo_config_set(cfg, "seed", "7") == ITOPO_OK);
  CHECK(itopo_config_set(cfg, "bogus", "1") == ITOPO_ERR_INVALID_ARGUMENT);
  CHECK(std::string(itopo_last_error()).find("bogus") != std::string::npos);
  const char* text = nullptr;
  REQUIRE(itopo_config_canonical(cfg, &text) == ITOPO_OK);
  CHECK(std::string(text).find("seed = 7\n") != std::string::npos);

  itopo_diagnostics* diags = nullptr;
  CHECK(itopo_config_validate(cfg, &diags) == ITOPO_OK);
  CHECK(itopo_diagnostics_count(diags) == 0);
  itopo_diagnostics_free(diags);

  CHECK(itopo_config_set(cfg, "shots", "-1") == ITOPO_OK);
  CHECK(itopo_config_validate(cfg, &diags) == ITOPO_ERR_VALIDATION);
  REQUIRE(itopo_diagnostics_count(diags) == 1);
  CHECK(std::string(itopo_diagnostics_field(diags, 0)) == "shots");
  CHECK(itopo_diagnostics_message(diags, 1) == nullptr);
  itopo_diagnostics_free(diags);

  itopo_record* rec = nullptr;
  CHECK(itopo_run(cfg, nullptr, &rec) == ITOPO_ERR_VALIDATION);
  CHECK(rec == nullptr);
  itopo_config_free(cfg);
  CHECK(itopo_config_load("/nonexistent.cfg", &cfg) == ITOPO_ERR_IO);
}

TEST_CASE("runs return a record and flag non-convergence") {
  itopo_config* cfg = nullptr;
  REQUIRE(itopo_config_parse("kind = optimize\nL = 4\nb = 1\n", &cfg) == ITOPO_OK);
  const itopo_run_options opts{nullptr, 0, 0, 0};
  itopo_record* rec = nullptr;
  REQUIRE(itopo_run(cfg, &opts, &rec) == ITOPO_OK);
  CHECK(std::string(itopo_record_json(rec)).find("\"status\": \"ok\"") != std::string::npos);
  CHECK(std::strlen(itopo_record_config_hash(rec)) == 40);
  CHECK(std::string(itopo_record_summary(rec)).find("target_reached") != std::string::npos);
  itopo_record_free(rec);

  REQUIRE(itopo_config_set(cfg, "max_iters", "2") == ITOPO_OK);
  rec = nullptr;
  CHECK(itopo_run(cfg, &opts, &rec) == ITOPO_ERR_NOT_CONVERGED);
  REQUIRE(rec != nullptr);
  CHECK(std::string(itopo_record_json(rec)).find("not_converged") != std::string::npos);
  itopo_record_free(rec);
  itopo_config_free(cfg);
}

TEST_CASE("model helpers") {
  int n = 0;
  CHECK(itopo_parameter_count(8, 4, 1, &n) == ITOPO_OK);
  CHECK(n == 96);
  CHECK(itopo_parameter_count(8, 4, 0, &n) == ITOPO_OK);
  CHECK(n == 92);
  CHECK(itopo_parameter_count(0, 4, 0, &n) == ITOPO_ERR_INVALID_ARGUMENT);

  double e = 0.0, gap = 0.0;
  CHECK(itopo_ground_energy(2, 0, 0.0, 1, &e, &gap) == ITOPO_OK);
  CHECK(e == doctest::Approx(-std::sqrt(5.0)));
  CHECK(itopo_ground_energy(15, 0, 0.0, 7, &e, nullptr) == ITOPO_ERR_INVALID_ARGUMENT);
  CHECK(std::string(itopo_last_error()).find("oracle range exceeded") != std::string::npos);

  size_t needed = 0;
  CHECK(itopo_hamiltonian_dump(3, 0, 0.0, 1, nullptr, 0, &needed) == ITOPO_OK);
  std::vector<char> buf(needed);
  CHECK(itopo_hamiltonian_dump(3, 0, 0.0, 1, buf.data(), buf.size(), nullptr) == ITOPO_OK);
  CHECK(std::string(buf.data()).rfind("# n_qubits=3\n", 0) == 0);
  char small[4];
  CHECK(itopo_hamiltonian_dump(3, 0, 0.0, 1, small, sizeof small, nullptr) == ITOPO_ERR_INVALID_ARGUMENT);
}
