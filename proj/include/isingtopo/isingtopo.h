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

#ifndef ISINGTOPO_ISINGTOPO_H_
#define ISINGTOPO_ISINGTOPO_H_

/* C interface to the isingtopo library. All handles are opaque; every
 * function returns an itopo_status and leaves a message retrievable through
 * itopo_last_error() on failure. Strings returned by accessors are owned by
 * the handle and stay valid until it is freed. */

#include <stddef.h>
#include <stdint.h>

#if defined(ISINGTOPO_BUILDING_LIBRARY)
#define ITOPO_API __attribute__((visibility("default")))
#else
#define ITOPO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum itopo_status {
  ITOPO_OK = 0,
  ITOPO_ERR_INVALID_ARGUMENT = 1,
  ITOPO_ERR_VALIDATION = 2,
  ITOPO_ERR_NOT_CONVERGED = 3,
  ITOPO_ERR_NUMERICAL = 4,
  ITOPO_ERR_IO = 5,
  ITOPO_ERR_INTERNAL = 6
} itopo_status;

typedef struct itopo_config itopo_config;
typedef struct itopo_diagnostics itopo_diagnostics;
typedef struct itopo_record itopo_record;

typedef struct itopo_run_options {
  const char* out_dir; /* NULL: "run" */
  int write_files;
  int dump_hamiltonian;
  int dump_state;
} itopo_run_options;

ITOPO_API const char* itopo_version(void);
/* Message of the most recent failure on the calling thread. */
ITOPO_API const char* itopo_last_error(void);

ITOPO_API itopo_status itopo_config_load(const char* path, itopo_config** out);
ITOPO_API itopo_status itopo_config_parse(const char* text, itopo_config** out);
ITOPO_API itopo_status itopo_config_set(itopo_config* cfg, const char* key, const char* value);
/* Canonical "key = value" text of the resolved config. */
ITOPO_API itopo_status itopo_config_canonical(const itopo_config* cfg, const char** text);
ITOPO_API void itopo_config_free(itopo_config* cfg);

ITOPO_API itopo_status itopo_config_validate(const itopo_config* cfg, itopo_diagnostics** out);
ITOPO_API size_t itopo_diagnostics_count(const itopo_diagnostics* diags);
ITOPO_API const char* itopo_diagnostics_field(const itopo_diagnostics* diags, size_t index);
ITOPO_API const char* itopo_diagnostics_message(const itopo_diagnostics* diags, size_t index);
ITOPO_API void itopo_diagnostics_free(itopo_diagnostics* diags);

/* Runs the experiment. Returns ITOPO_ERR_NOT_CONVERGED with a valid record
 * when an optimization missed its target; ITOPO_ERR_VALIDATION when the
 * config is invalid (no record). */
ITOPO_API itopo_status itopo_run(const itopo_config* cfg, const itopo_run_options* options, itopo_record** out);
ITOPO_API const char* itopo_record_json(const itopo_record* rec);
ITOPO_API const char* itopo_record_summary(const itopo_record* rec);
ITOPO_API const char* itopo_record_config_hash(const itopo_record* rec);
ITOPO_API void itopo_record_free(itopo_record* rec);

/* Model helpers. j is the 1-based defect bond. */
ITOPO_API itopo_status itopo_parameter_count(int L, int layers, int periodic, int* out);
ITOPO_API itopo_status itopo_ground_energy(int L, int b, double v, int j, double* energy, double* gap);
/* Writes the serialized Hamiltonian into buf (NUL-terminated when it fits);
 * *needed receives the required size including the terminator. */
ITOPO_API itopo_status itopo_hamiltonian_dump(int L, int b, double v, int j, char* buf, size_t size, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* ISINGTOPO_ISINGTOPO_H_ */
