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

#include "isingtopo/ansatz.hpp"

#include <random>

#include "isingtopo/rng.hpp"

namespace isingtopo {
namespace {

void validate_spec(const AnsatzSpec& spec) {
  if (spec.layers < 1) throw_invalid("ansatz needs at least one layer");
  const int min_l = spec.boundary == Boundary::kPeriodic ? 2 : 1;
  if (spec.L < min_l || spec.L > kMaxStateQubits) {
    throw_invalid("ansatz chain length out of range: L=" + std::to_string(spec.L));
  }
}

int bonds(const AnsatzSpec& spec) {
  return spec.boundary == Boundary::kPeriodic ? spec.L : spec.L - 1;
}

}  // namespace

AnsatzSpec default_ansatz(const ModelParams& p) {
  return {p.L, std::max(1, p.L / 2), p.boundary()};
}

int parameter_count(const AnsatzSpec& spec) {
  validate_spec(spec);
  return (bonds(spec) + 2 * spec.L) * spec.layers;
}

ParameterizedCircuit::ParameterizedCircuit(int num_qubits, std::vector<PauliString> generators)
    : ParameterizedCircuit(plus_state(num_qubits), std::move(generators)) {}

ParameterizedCircuit::ParameterizedCircuit(StateVector initial, std::vector<PauliString> generators)
    : initial_(std::move(initial)), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.num_qubits() != initial_.num_qubits()) throw_invalid("generator register does not match circuit");
    if (!g.is_hermitian()) throw_invalid("circuit generators must be hermitian Pauli strings");
  }
}

const PauliString& ParameterizedCircuit::generator(int p) const {
  if (p < 0 || p >= num_parameters()) throw_range("parameter index " + std::to_string(p) + " out of range");
  return generators_[static_cast<std::size_t>(p)];
}

void ParameterizedCircuit::check_params(std::span<const double> params) const {
  if (params.size() != generators_.size()) {
    throw_invalid("parameter vector has length " + std::to_string(params.size()) + ", circuit expects " +
                  std::to_string(generators_.size()));
  }
}

std::vector<RotationGate> ParameterizedCircuit::bind(std::span<const double> params) const {
  check_params(params);
  std::vector<RotationGate> gates;
  gates.reserve(generators_.size());
  for (std::size_t k = 0; k < generators_.size(); ++k) gates.push_back({generators_[k], params[k]});
  return gates;
}

StateVector ParameterizedCircuit::prepare(std::span<const double> params) const {
  check_params(params);
  StateVector s = initial_;
  apply_range(s, params, 0, num_parameters());
  return s;
}

StateVector ParameterizedCircuit::prepare_truncated(std::span<const double> params, int cut, bool include_cut) const {
  check_params(params);
  if (cut < 0 || cut >= num_parameters()) throw_range("cut index " + std::to_string(cut) + " out of range");
  StateVector s = initial_;
  apply_range(s, params, 0, include_cut ? cut + 1 : cut);
  return s;
}

void ParameterizedCircuit::apply_range(StateVector& state, std::span<const double> params, int begin, int end) const {
  for (int k = begin; k < end; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    state.apply_rotation(generators_[uk], params[uk]);
  }
}

ParameterizedCircuit ansatz_circuit(const AnsatzSpec& spec) {
  validate_spec(spec);
  const int L = spec.L;
  std::vector<PauliString> gens;
  gens.reserve(static_cast<std::size_t>(parameter_count(spec)));
  for (int layer = 0; layer < spec.layers; ++layer) {
    for (int j = 0; j < bonds(spec); ++j) gens.push_back(PauliString(L, {{j, Pauli::Z}, {(j + 1) % L, Pauli::Z}}));
    for (int j = 0; j < L; ++j) gens.push_back(PauliString::single(L, j, Pauli::X));
    for (int j = 0; j < L; ++j) gens.push_back(PauliString::single(L, j, Pauli::Z));
  }
  return ParameterizedCircuit(L, std::move(gens));
}

std::string parameter_label(const AnsatzSpec& spec, int p) {
  const int per_layer = parameter_count(spec) / spec.layers;
  if (p < 0 || p >= per_layer * spec.layers) throw_range("parameter index out of range");
  const int layer = p / per_layer + 1;
  int k = p % per_layer;
  const char* name = "theta";
  if (k >= bonds(spec)) {
    k -= bonds(spec);
    name = "zeta";
    if (k >= spec.L) {
      k -= spec.L;
      name = "phi";
    }
  }
  return std::string(name) + "[" + std::to_string(layer) + "][" + std::to_string(k + 1) + "]";
}

StateVector prepare_state(const AnsatzSpec& spec, std::span<const double> params) {
  return ansatz_circuit(spec).prepare(params);
}

StateVector prepare_truncated(const AnsatzSpec& spec, std::span<const double> params, int cut, bool include_cut) {
  return ansatz_circuit(spec).prepare_truncated(params, cut, include_cut);
}

ParameterVector initial_parameters(const AnsatzSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, "ansatz-init"));
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  ParameterVector out(static_cast<std::size_t>(parameter_count(spec)));
  for (double& x : out) x = u(rng);
  return out;
}

}  // namespace isingtopo
