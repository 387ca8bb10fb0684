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

// Layered variational circuit. Each layer applies, in time order,
//
//   ZZ rotations on every bond (ascending), then X rotations on every site,
//   then Z rotations on every site,
//
// i.e. U = U_Z U_X U_ZZ, starting from |+>^L. Parameter p drives gate p, so
// the global parameter order is: for each layer, all theta (ZZ), all zeta
// (X), all phi (Z). Periodic circuits carry the extra bond (L, 1).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "isingtopo/model.hpp"
#include "isingtopo/statevector.hpp"

namespace isingtopo {

using ParameterVector = std::vector<double>;

struct AnsatzSpec {
  int L = 2;
  int layers = 1;
  Boundary boundary = Boundary::kOpen;
};

// Boundary copied from the model, layers = L/2 (at least 1).
AnsatzSpec default_ansatz(const ModelParams& p);

// 3 L N for periodic, (3L - 1) N for open.
int parameter_count(const AnsatzSpec& spec);

// A circuit of Pauli rotations R_{G_k}(theta_k) applied in order to a fixed
// initial state, one free parameter per gate.
class ParameterizedCircuit {
 public:
  ParameterizedCircuit(int num_qubits, std::vector<PauliString> generators);
  ParameterizedCircuit(StateVector initial, std::vector<PauliString> generators);

  int num_qubits() const noexcept { return initial_.num_qubits(); }
  int num_parameters() const noexcept { return static_cast<int>(generators_.size()); }
  const PauliString& generator(int p) const;
  const std::vector<PauliString>& generators() const noexcept { return generators_; }
  const StateVector& initial_state() const noexcept { return initial_; }

  std::vector<RotationGate> bind(std::span<const double> params) const;
  StateVector prepare(std::span<const double> params) const;
  // Gates strictly before `cut`, or through it when include_cut is set.
  StateVector prepare_truncated(std::span<const double> params, int cut, bool include_cut) const;
  // Applies gates [begin, end) to `state`.
  void apply_range(StateVector& state, std::span<const double> params, int begin, int end) const;

 private:
  void check_params(std::span<const double> params) const;

  StateVector initial_;
  std::vector<PauliString> generators_;
};

ParameterizedCircuit ansatz_circuit(const AnsatzSpec& spec);

// Human-readable name of parameter p, e.g. "theta[2][5]" (1-based layer and
// chain site).
std::string parameter_label(const AnsatzSpec& spec, int p);

StateVector prepare_state(const AnsatzSpec& spec, std::span<const double> params);
StateVector prepare_truncated(const AnsatzSpec& spec, std::span<const double> params, int cut, bool include_cut);

// Independent uniform draws from [-0.01, 0.01].
ParameterVector initial_parameters(const AnsatzSpec& spec, std::uint64_t seed);

}  // namespace isingtopo
