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

#include "isingtopo/experiment.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "isingtopo/model.hpp"
#include "isingtopo/observables.hpp"
#include "isingtopo/qng.hpp"
#include "isingtopo/rng.hpp"
#include "isingtopo/version.hpp"
#include "json.hpp"

namespace isingtopo {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw_invalid("config key '" + std::string(key) + "': cannot parse '" + std::string(value) + "' as " +
                std::string(expected));
}

double parse_double(std::string_view key, std::string_view s) {
  const std::string buf(s);
  char* end = nullptr;
  const double x = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || std::isnan(x)) bad_value(key, s, "a number");
  return x;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view s) {
  Int x{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) bad_value(key, s, "an integer");
  return x;
}

bool parse_bool(std::string_view key, std::string_view s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value(key, s, "a boolean");
}

std::vector<double> parse_double_list(std::string_view key, std::string_view s) {
  std::vector<double> out;
  for (auto item : split(s, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_double(key, parts[0]));
    } else if (parts.size() == 3) {
      const double start = parse_double(key, parts[0]);
      const double step = parse_double(key, parts[1]);
      const double stop = parse_double(key, parts[2]);
      if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) bad_value(key, item, "a range start:step:stop");
      for (int k = 0;; ++k) {
        const double x = std::round((start + k * step) * 1e12) / 1e12;
        if (x > stop + 1e-9 * step) break;
        out.push_back(x);
      }
    } else {
      bad_value(key, item, "a number or start:step:stop range");
    }
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view s) {
  std::vector<int> out;
  for (auto item : split(s, ',')) out.push_back(parse_int<int>(key, item));
  return out;
}

std::string fmt_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

json json_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

template <class T>
std::string join(const std::vector<T>& xs, auto&& fmt) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ", ";
    out += fmt(xs[k]);
  }
  return out;
}

json zne_json(const ZneReport& rep) {
  json estimates = json::array();
  json errors = json::array();
  for (const auto& e : rep.estimates) {
    estimates.push_back(e.value);
    errors.push_back(e.std_error);
  }
  return {{"factors", rep.factors},
          {"estimates", estimates},
          {"std_errors", errors},
          {"extrapolated", rep.extrapolated},
          {"noiseless_reference", rep.noiseless_reference}};
}

bool uses_ansatz(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::kOptimize:
    case ExperimentKind::kZne:
      return true;
    case ExperimentKind::kCorrelator:
    case ExperimentKind::kYbar:
      return cfg.state == StateSource::kCircuit;
    case ExperimentKind::kEnergyScan:
      return false;
  }
  return false;
}

bool needs_oracle(const ExperimentConfig& cfg) {
  return cfg.kind == ExperimentKind::kEnergyScan || cfg.state == StateSource::kExact ||
         (uses_ansatz(cfg) && cfg.oracle);
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kOptimize: return "optimize";
    case ExperimentKind::kCorrelator: return "correlator";
    case ExperimentKind::kYbar: return "ybar";
    case ExperimentKind::kEnergyScan: return "energy-scan";
    case ExperimentKind::kZne: return "zne";
  }
  return "unknown";
}

std::int64_t ExperimentConfig::resolved_shots() const {
  return shots.value_or(kind == ExperimentKind::kCorrelator ? 8192 : 1024);
}

int ExperimentConfig::resolved_runs() const { return runs.value_or(kind == ExperimentKind::kCorrelator ? 10 : 5); }

void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "kind") {
    if (value == "optimize") cfg.kind = ExperimentKind::kOptimize;
    else if (value == "correlator") cfg.kind = ExperimentKind::kCorrelator;
    else if (value == "ybar") cfg.kind = ExperimentKind::kYbar;
    else if (value == "energy-scan") cfg.kind = ExperimentKind::kEnergyScan;
    else if (value == "zne") cfg.kind = ExperimentKind::kZne;
    else bad_value(key, value, "one of optimize, correlator, ybar, energy-scan, zne");
  } else if (key == "L") {
    cfg.L = parse_int_list(key, value);
  } else if (key == "b") {
    cfg.b = parse_int<int>(key, value);
  } else if (key == "v") {
    cfg.v = parse_double_list(key, value);
  } else if (key == "j") {
    cfg.j = value == "auto" ? std::nullopt : std::optional<int>(parse_int<int>(key, value));
  } else if (key == "layers") {
    cfg.layers = value == "auto" ? std::nullopt : std::optional<int>(parse_int<int>(key, value));
  } else if (key == "eta") {
    cfg.eta = parse_double(key, value);
  } else if (key == "tikhonov") {
    cfg.tikhonov = parse_double(key, value);
  } else if (key == "max_iters") {
    cfg.max_iters = parse_int<int>(key, value);
  } else if (key == "target_rel_error") {
    cfg.target_rel_error = parse_double(key, value);
  } else if (key == "oracle") {
    cfg.oracle = parse_bool(key, value);
  } else if (key == "state") {
    if (value == "circuit") cfg.state = StateSource::kCircuit;
    else if (value == "exact") cfg.state = StateSource::kExact;
    else bad_value(key, value, "circuit or exact");
  } else if (key == "shots") {
    cfg.shots = parse_int<std::int64_t>(key, value);
  } else if (key == "runs") {
    cfg.runs = parse_int<int>(key, value);
  } else if (key == "analytic") {
    cfg.analytic = parse_bool(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "zne") {
    cfg.zne = parse_bool(key, value);
  } else if (key == "p2") {
    cfg.noise.p2 = parse_double(key, value);
  } else if (key == "p1") {
    cfg.noise.p1 = parse_double(key, value);
  } else if (key == "zne_factors") {
    cfg.schedule.factors = parse_double_list(key, value);
  } else if (key == "zne_degree") {
    cfg.schedule.degree = parse_int<int>(key, value);
  } else if (key == "trajectories") {
    cfg.trajectories = parse_int<int>(key, value);
  } else {
    throw_invalid("unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  int lineno = 0;
  for (auto raw : split(text, '\n')) {
    ++lineno;
    const auto hash = raw.find('#');
    const auto line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw_invalid("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    try {
      set_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.kind(), "config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const ExperimentConfig& cfg) {
  std::string out;
  auto put = [&](std::string_view k, const std::string& v) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  };
  put("kind", to_string(cfg.kind));
  put("L", join(cfg.L, [](int x) { return std::to_string(x); }));
  put("b", std::to_string(cfg.b));
  put("v", join(cfg.v, fmt_double));
  put("j", cfg.j ? std::to_string(*cfg.j) : "auto");
  put("layers", cfg.layers ? std::to_string(*cfg.layers) : "auto");
  put("eta", fmt_double(cfg.eta));
  put("tikhonov", fmt_double(cfg.tikhonov));
  put("max_iters", std::to_string(cfg.max_iters));
  put("target_rel_error", fmt_double(cfg.target_rel_error));
  put("oracle", cfg.oracle ? "true" : "false");
  put("state", cfg.state == StateSource::kExact ? "exact" : "circuit");
  put("shots", std::to_string(cfg.resolved_shots()));
  put("runs", std::to_string(cfg.resolved_runs()));
  put("analytic", cfg.analytic ? "true" : "false");
  put("seed", std::to_string(cfg.seed));
  put("zne", cfg.zne ? "true" : "false");
  put("p2", fmt_double(cfg.noise.p2));
  put("p1", fmt_double(cfg.noise.p1));
  put("zne_factors", join(cfg.schedule.factors, fmt_double));
  put("zne_degree", std::to_string(cfg.schedule.degree));
  put("trajectories", std::to_string(cfg.trajectories));
  return out;
}

std::vector<Diagnostic> validate(const ExperimentConfig& cfg) {
  std::vector<Diagnostic> out;
  auto diag = [&](std::string field, std::string msg) { out.push_back({std::move(field), std::move(msg)}); };

  if (cfg.L.empty()) diag("L", "at least one chain length is required");
  if (cfg.v.empty()) diag("v", "at least one impurity strength is required");
  if (cfg.b != 0 && cfg.b != 1) diag("b", "boundary coupling must be 0 or 1");
  for (int L : cfg.L) {
    const std::string tag = "L=" + std::to_string(L) + ": ";
    const int min_l = uses_ansatz(cfg) && cfg.b == 1 ? 2 : 1;
    if (L < min_l) {
      diag("L", tag + "chain length must be at least " + std::to_string(min_l));
      continue;
    }
    if (L + (uses_ansatz(cfg) ? 1 : 0) > kMaxStateQubits) diag("L", tag + "statevector size limit exceeded");
    if (needs_oracle(cfg) && L > kMaxOracleQubits) {
      diag("L", tag + "oracle range exceeded (exact diagonalization supports L <= " + std::to_string(kMaxOracleQubits) + ")");
    }
    if (uses_ansatz(cfg) && !cfg.layers && L % 2 != 0) {
      diag("layers", tag + "L must be even when layers defaults to L/2");
    }
    if (L >= 2) {
      const int j = cfg.resolved_j(L);
      const int j_max = cfg.b == 1 ? L : L - 1;
      if (j < 1 || j > j_max) diag("j", tag + "defect site j must be in 1.." + std::to_string(j_max));
    } else {
      for (double v : cfg.v) {
        if (v != 0.0) diag("v", tag + "a single-site chain cannot carry a defect");
      }
    }
  }
  if (cfg.layers && *cfg.layers < 1) diag("layers", "layers must be at least 1");
  if (cfg.kind == ExperimentKind::kEnergyScan) {
    for (double v : cfg.v) {
      if (!std::isfinite(v)) diag("v", "energy scan requires finite v values");
    }
  }
  if (!(cfg.eta > 0.0)) diag("eta", "learning rate must be positive");
  if (!(cfg.tikhonov > 0.0)) diag("tikhonov", "Tikhonov shift must be positive");
  if (cfg.max_iters < 0) diag("max_iters", "max_iters must be non-negative");
  if (!(cfg.target_rel_error > 0.0)) diag("target_rel_error", "target relative error must be positive");
  if (cfg.resolved_shots() < 1) diag("shots", "shots must be positive");
  if (cfg.resolved_runs() < 1) diag("runs", "runs must be positive");
  if (!(cfg.noise.p2 >= 0.0 && cfg.noise.p2 < 1.0)) diag("p2", "p2 must lie in [0, 1)");
  if (!(cfg.noise.p1 >= 0.0 && cfg.noise.p1 < 1.0)) diag("p1", "p1 must lie in [0, 1)");
  if (cfg.trajectories < 1) diag("trajectories", "trajectories must be at least 1");
  try {
    validate_schedule(cfg.schedule);
  } catch (const Error& e) {
    diag("zne_factors", e.what());
  }
  return out;
}

std::string git_blob_hash(std::string_view content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob.append(content);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1) {
    throw_numerical("SHA-1 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int k = 0; k < len; ++k) {
    hex += kHex[md[k] >> 4];
    hex += kHex[md[k] & 0xF];
  }
  return hex;
}

namespace {

class Runner {
 public:
  Runner(const ExperimentConfig& cfg, const RunOptions& opts) : cfg_(cfg), opts_(opts) {}

  RunRecord run();

 private:
  struct Prepared {
    ModelParams model;
    AnsatzSpec spec;
    WeightedPauliSum h;
    StateVector state;
    std::optional<OptimizeResult> opt;
    std::optional<SpectrumResult> exact;
  };

  ShotPlan plan(const std::string& stream) const {
    ShotPlan p;
    p.shots = cfg_.resolved_shots();
    p.runs = cfg_.resolved_runs();
    p.analytic = cfg_.analytic;
    p.seed = derive_seed(cfg_.seed, stream);
    return p;
  }

  std::string tag(int L, double v) const { return "L" + std::to_string(L) + "_v" + short_double(v); }

  void write(const std::string& name, const std::string& content, bool binary = false);
  Prepared prepare(int L, double v, bool want_circuit);
  json optimization_json(const OptimizeResult& r) const;

  void run_optimize(int L, double v);
  void run_correlator(int L, double v);
  void run_ybar(int L, double v);
  void run_energy_scan(int L);
  void run_zne(int L, double v);

  const ExperimentConfig& cfg_;
  const RunOptions& opts_;
  json outputs_ = json::object();
  std::vector<std::string> files_;
  std::string summary_;
  bool converged_ = true;
};

void Runner::write(const std::string& name, const std::string& content, bool binary) {
  files_.push_back(name);
  if (!opts_.write_files) return;
  std::filesystem::create_directories(opts_.out_dir);
  std::ofstream out(opts_.out_dir / name, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + (opts_.out_dir / name).string());
  out << content;
}

Runner::Prepared Runner::prepare(int L, double v, bool want_circuit) {
  Prepared p;
  p.model = ModelParams{L, cfg_.b, v, L >= 2 ? cfg_.resolved_j(L) : 1};
  p.spec = AnsatzSpec{L, cfg_.resolved_layers(L), p.model.boundary()};
  p.h = build_hamiltonian(p.model);
  if (L <= kMaxOracleQubits && (cfg_.oracle || !want_circuit)) p.exact = exact_ground(p.model);
  if (want_circuit) {
    OptimizeOptions oo;
    oo.qng.learning_rate = cfg_.eta;
    oo.qng.tikhonov = cfg_.tikhonov;
    oo.max_iters = cfg_.max_iters;
    oo.target_rel_error = cfg_.target_rel_error;
    oo.use_oracle = cfg_.oracle && p.exact.has_value();
    oo.seed = derive_seed(cfg_.seed, "init/" + tag(L, v));
    const auto circuit = ansatz_circuit(p.spec);
    const double target = p.exact ? p.exact->ground_energy : std::numeric_limits<double>::quiet_NaN();
    p.opt = optimize(circuit, p.h, initial_parameters(p.spec, oo.seed), oo, target);
    if (!p.opt->converged) converged_ = false;
    p.state = circuit.prepare(p.opt->state.params);
  } else {
    p.state = p.exact->ground_state;
  }
  if (opts_.dump_hamiltonian) write("hamiltonian_" + tag(L, v) + ".txt", p.h.serialize());
  if (opts_.dump_state) {
    std::ostringstream bin(std::ios::binary);
    write_state_binary(bin, p.state);
    write("state_" + tag(L, v) + ".bin", bin.str(), true);
  }
  return p;
}

json Runner::optimization_json(const OptimizeResult& r) const {
  return {
      {"iterations", r.state.iteration},
      {"final_energy", r.state.energy},
      {"target_energy", json_double(r.target_energy)},
      {"rel_error", json_double(r.rel_error)},
      {"grad_norm", r.state.grad_norm},
      {"converged", r.converged},
      {"stop_reason", to_string(r.reason)},
      {"params", r.state.params},
  };
}

void Runner::run_optimize(int L, double v) {
  auto p = prepare(L, v, true);
  const auto& r = *p.opt;
  write("trace_" + tag(L, v) + ".csv", trace_csv(r.trace));
  json out = optimization_json(r);
  const auto measured = measure_energy(p.state, p.h, plan("energy/" + tag(L, v)));
  double zne_value = 0.0;
  out["measured_energy"] = {{"value", measured.value}, {"std_error", measured.std_error}, {"shots", measured.shots_used}};
  if (cfg_.zne) {
    const auto gates = ansatz_circuit(p.spec).bind(r.state.params);
    const auto rep = isingtopo::run_zne(plus_state(L), gates, p.h, cfg_.noise, cfg_.schedule, cfg_.trajectories,
                                        derive_seed(cfg_.seed, "zne/" + tag(L, v)));
    out["zne"] = zne_json(rep);
    zne_value = rep.extrapolated;
  }
  outputs_[tag(L, v)] = out;
  char line[240];
  std::snprintf(line, sizeof line, "%-4d %-6s %6d %18.10f %18.10f %12.3e %-15s %14.6f", L, short_double(v).c_str(),
                r.state.iteration, r.state.energy, r.target_energy, r.rel_error, to_string(r.reason).c_str(),
                measured.value);
  summary_ += line;
  if (cfg_.zne) {
    std::snprintf(line, sizeof line, " %14.6f", zne_value);
    summary_ += line;
  }
  summary_ += '\n';
}

void Runner::run_correlator(int L, double v) {
  auto p = prepare(L, v, cfg_.state == StateSource::kCircuit);
  const auto sampled = correlator_profile_sampled(p.state, plan("correlator/" + tag(L, v)));
  write("correlator_" + tag(L, v) + ".csv", correlator_csv(sampled));
  json out;
  json values = json::array();
  for (const auto& pt : sampled) values.push_back({{"r", pt.r}, {"value", pt.value}, {"std_error", pt.std_error}});
  out["sampled"] = values;
  if (p.exact) {
    json exact = json::array();
    for (const auto& pt : correlator_profile(p.exact->ground_state)) exact.push_back(pt.value);
    out["exact"] = exact;
  }
  if (p.opt) out["optimization"] = optimization_json(*p.opt);
  outputs_[tag(L, v)] = out;
  for (const auto& pt : sampled) {
    char line[160];
    std::snprintf(line, sizeof line, "%-4d %-6s %4d %12.6f %12.6f\n", L, short_double(v).c_str(), pt.r, pt.value,
                  pt.std_error);
    summary_ += line;
  }
}

void Runner::run_ybar(int L, double v) {
  auto p = prepare(L, v, cfg_.state == StateSource::kCircuit);
  const auto pl = plan("ybar/" + tag(L, v));
  const auto est = p.opt ? ybar_hadamard(p.spec, p.opt->state.params, pl) : ybar_hadamard(p.state, pl);
  const double exact = p.exact ? ybar_exact(p.exact->ground_state) : std::numeric_limits<double>::quiet_NaN();
  const json out = {{"L", L}, {"v", json_double(v)}, {"estimate", est.value}, {"std_error", est.std_error},
                    {"exact", json_double(exact)}};
  write("ybar_" + tag(L, v) + ".json", out.dump(2) + "\n");
  json rec = out;
  const auto energy = measure_energy(p.state, p.h, plan("energy/" + tag(L, v)));
  rec["measured_energy"] = {{"value", energy.value}, {"std_error", energy.std_error}};
  if (p.opt) rec["optimization"] = optimization_json(*p.opt);
  outputs_[tag(L, v)] = rec;
  char line[160];
  std::snprintf(line, sizeof line, "%-4d %-6s %12.6f %12.6f %12.6f\n", L, short_double(v).c_str(), est.value,
                est.std_error, exact);
  summary_ += line;
}

void Runner::run_energy_scan(int L) {
  const auto rows = energy_scan(L, cfg_.b, cfg_.v, L >= 2 ? cfg_.resolved_j(L) : 1);
  write("energy_scan_L" + std::to_string(L) + ".csv", scan_csv(rows));
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"v", r.v}, {"L_over_lB", r.L_over_lB}, {"ground_energy", r.ground_energy}, {"gap", r.gap}});
    char line[160];
    std::snprintf(line, sizeof line, "%-4d %-8g %14.6e %18.10f %12.6e\n", L, r.v, r.L_over_lB, r.ground_energy, r.gap);
    summary_ += line;
  }
  outputs_["L" + std::to_string(L)] = out;
}

void Runner::run_zne(int L, double v) {
  auto p = prepare(L, v, true);
  const auto gates = ansatz_circuit(p.spec).bind(p.opt->state.params);
  const auto rep = isingtopo::run_zne(plus_state(L), gates, p.h, cfg_.noise, cfg_.schedule, cfg_.trajectories,
                                      derive_seed(cfg_.seed, "zne/" + tag(L, v)));
  const json out = zne_json(rep);
  write("zne_" + tag(L, v) + ".json", out.dump(2) + "\n");
  json rec = out;
  rec["optimization"] = optimization_json(*p.opt);
  outputs_[tag(L, v)] = rec;
  char line[200];
  std::snprintf(line, sizeof line, "%-4d %-6s %16.10f %16.10f %16.10f\n", L, short_double(v).c_str(),
                rep.estimates.front().value, rep.extrapolated, rep.noiseless_reference);
  summary_ += line;
}

RunRecord Runner::run() {
  const auto t0 = std::chrono::steady_clock::now();
  switch (cfg_.kind) {
    case ExperimentKind::kOptimize:
      summary_ = "L    v      iters             energy              exact    rel_error stop            measured";
      summary_ += cfg_.zne ? "  zne_extrap\n" : "\n";
      break;
    case ExperimentKind::kCorrelator:
      summary_ = "L    v         r    <Z1 Zr>    std_error\n";
      break;
    case ExperimentKind::kYbar:
      summary_ = "L    v          estimate    std_error        exact\n";
      break;
    case ExperimentKind::kEnergyScan:
      summary_ = "L    v              L/l_B      ground_energy          gap\n";
      break;
    case ExperimentKind::kZne:
      summary_ = "L    v          unmitigated     extrapolated        noiseless\n";
      break;
  }
  for (int L : cfg_.L) {
    if (cfg_.kind == ExperimentKind::kEnergyScan) {
      run_energy_scan(L);
      continue;
    }
    for (double v : cfg_.v) {
      switch (cfg_.kind) {
        case ExperimentKind::kOptimize: run_optimize(L, v); break;
        case ExperimentKind::kCorrelator: run_correlator(L, v); break;
        case ExperimentKind::kYbar: run_ybar(L, v); break;
        case ExperimentKind::kZne: run_zne(L, v); break;
        case ExperimentKind::kEnergyScan: break;
      }
    }
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  RunRecord rec;
  const std::string canon = canonical_config(cfg_);
  rec.config_hash = git_blob_hash(canon);
  rec.outputs_hash = git_blob_hash(outputs_.dump());
  rec.converged = converged_;
  rec.summary = summary_;
  files_.push_back("record.json");
  rec.files = files_;

  json config_echo = json::object();
  for (auto line : split(canon, '\n')) {
    const auto eq = line.find('=');
    if (eq != std::string_view::npos) config_echo[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  const json record = {
      {"config", config_echo},
      {"config_hash", rec.config_hash},
      {"outputs", outputs_},
      {"outputs_hash", rec.outputs_hash},
      {"status", converged_ ? "ok" : "not_converged"},
      {"files", files_},
      {"wall_time_s", wall},
      {"versions", {{"isingtopo", kVersion}, {"eigen", kEigenVersion}, {"compiler", __VERSION__}}},
  };
  rec.record_json = record.dump(2) + "\n";
  write("record.json", rec.record_json);
  return rec;
}

}  // namespace

RunRecord run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  const auto diags = validate(cfg);
  if (!diags.empty()) {
    std::string msg = "invalid config:";
    for (const auto& d : diags) msg += "\n  " + d.field + ": " + d.message;
    throw_invalid(msg);
  }
  return Runner(cfg, opts).run();
}

}  // namespace isingtopo
