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

#include "isingtopo/isingtopo.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "isingtopo/ansatz.hpp"
#include "isingtopo/experiment.hpp"
#include "isingtopo/model.hpp"
#include "isingtopo/version.hpp"

struct itopo_config {
  isingtopo::ExperimentConfig cfg;
  std::string canonical;
};

struct itopo_diagnostics {
  std::vector<isingtopo::Diagnostic> items;
};

struct itopo_record {
  isingtopo::RunRecord rec;
};

namespace {

thread_local std::string g_last_error;

itopo_status fail(itopo_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

itopo_status status_of(const isingtopo::Error& e) {
  switch (e.kind()) {
    case isingtopo::ErrorKind::kInvalidArgument:
    case isingtopo::ErrorKind::kOutOfRange:
      return ITOPO_ERR_INVALID_ARGUMENT;
    case isingtopo::ErrorKind::kNumerical:
      return ITOPO_ERR_NUMERICAL;
    case isingtopo::ErrorKind::kIo:
      return ITOPO_ERR_IO;
  }
  return ITOPO_ERR_INTERNAL;
}

template <class F>
itopo_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const isingtopo::Error& e) {
    return fail(status_of(e), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ITOPO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ITOPO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ITOPO_ERR_INTERNAL, "unknown error");
  }
}

isingtopo::ModelParams model_params(int L, int b, double v, int j) {
  isingtopo::ModelParams p{L, b, v, j};
  isingtopo::validate_params(p);
  return p;
}

}  // namespace

extern "C" {

const char* itopo_version(void) { return isingtopo::kVersion; }

const char* itopo_last_error(void) { return g_last_error.c_str(); }

itopo_status itopo_config_load(const char* path, itopo_config** out) {
  if (!path || !out) return fail(ITOPO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new itopo_config{isingtopo::load_config(path), {}};
    return ITOPO_OK;
  });
}

itopo_status itopo_config_parse(const char* text, itopo_config** out) {
  if (!text || !out) return fail(ITOPO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new itopo_config{isingtopo::parse_config(text), {}};
    return ITOPO_OK;
  });
}

itopo_status itopo_config_set(itopo_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(ITOPO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    isingtopo::set_config_value(cfg->cfg, key, value);
    return ITOPO_OK;
  });
}

itopo_status itopo_config_canonical(const itopo_config* cfg, const char** text) {
  if (!cfg || !text) return fail(ITOPO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto* mut = const_cast<itopo_config*>(cfg);
    mut->canonical = isingtopo::canonical_config(cfg->cfg);
    *text = mut->canonical.c_str();
    return ITOPO_OK;
  });
}

void itopo_config_free(itopo_config* cfg) { delete cfg; }

itopo_status itopo_config_validate(const itopo_config* cfg, itopo_diagnostics** out) {
  if (!cfg || !out) return fail(ITOPO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto d = std::make_unique<itopo_diagnostics>();
    d->items = isingtopo::validate(cfg->cfg);
    const bool ok = d->items.empty();
    std::string msg;
    for (const auto& item : d->items) msg += item.field + ": " + item.message + "\n";
    *out = d.release();
    return ok ? ITOPO_OK : fail(ITOPO_ERR_VALIDATION, msg);
  });
}

size_t itopo_diagnostics_count(const itopo_diagnostics* diags) { return diags ? diags->items.size() : 0; }

const char* itopo_diagnostics_field(const itopo_diagnostics* diags, size_t index) {
  if (!diags || index >= diags->items.size()) return nullptr;
  return diags->items[index].field.c_str();
}

const char* itopo_diagnostics_message(const itopo_diagnostics* diags, size_t index) {
  if (!diags || index >= diags->items.size()) return nullptr;
  return diags->items[index].message.c_str();
}

void itopo_diagnostics_free(itopo_diagnostics* diags) { delete diags; }

itopo_status itopo_run(const itopo_config* cfg, const itopo_run_options* options, itopo_record** out) {
  if (!cfg || !out) return fail(ITOPO_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto diags = isingtopo::validate(cfg->cfg);
    if (!diags.empty()) {
      std::string msg;
      for (const auto& d : diags) msg += d.field + ": " + d.message + "\n";
      return fail(ITOPO_ERR_VALIDATION, msg);
    }
    isingtopo::RunOptions opts;
    if (options) {
      if (options->out_dir) opts.out_dir = options->out_dir;
      opts.write_files = options->write_files != 0;
      opts.dump_hamiltonian = options->dump_hamiltonian != 0;
      opts.dump_state = options->dump_state != 0;
    }
    auto rec = std::make_unique<itopo_record>();
    rec->rec = isingtopo::run_experiment(cfg->cfg, opts);
    const bool converged = rec->rec.converged;
    *out = rec.release();
    return converged ? ITOPO_OK : fail(ITOPO_ERR_NOT_CONVERGED, "optimization did not reach its target");
  });
}

const char* itopo_record_json(const itopo_record* rec) { return rec ? rec->rec.record_json.c_str() : nullptr; }

const char* itopo_record_summary(const itopo_record* rec) { return rec ? rec->rec.summary.c_str() : nullptr; }

const char* itopo_record_config_hash(const itopo_record* rec) { return rec ? rec->rec.config_hash.c_str() : nullptr; }

void itopo_record_free(itopo_record* rec) { delete rec; }

itopo_status itopo_parameter_count(int L, int layers, int periodic, int* out) {
  if (!out) return fail(ITOPO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    isingtopo::AnsatzSpec spec{L, layers, periodic ? isingtopo::Boundary::kPeriodic : isingtopo::Boundary::kOpen};
    *out = isingtopo::parameter_count(spec);
    return ITOPO_OK;
  });
}

itopo_status itopo_ground_energy(int L, int b, double v, int j, double* energy, double* gap) {
  if (!energy) return fail(ITOPO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto r = isingtopo::exact_ground(model_params(L, b, v, j));
    *energy = r.ground_energy;
    if (gap) *gap = r.gap;
    return ITOPO_OK;
  });
}

itopo_status itopo_hamiltonian_dump(int L, int b, double v, int j, char* buf, size_t size, size_t* needed) {
  return guarded([&] {
    const std::string text = isingtopo::build_hamiltonian(model_params(L, b, v, j)).serialize();
    if (needed) *needed = text.size() + 1;
    if (buf && size > 0) {
      const size_t n = std::min(size - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
      if (n < text.size()) return fail(ITOPO_ERR_INVALID_ARGUMENT, "buffer too small");
    }
    return ITOPO_OK;
  });
}

}  // extern "C"
