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

// Dense statevector with in-place gate kernels.
//
// Amplitudes are stored flat with qubit 0 as the least-significant bit of the
// basis index. Rotations follow R_O(angle) = exp(-i * angle * O) with no
// factor of one half, so d/d(angle) R_O = (-i O) R_O.

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "isingtopo/error.hpp"
#include "isingtopo/pauli.hpp"

namespace isingtopo {

inline constexpr int kMaxStateQubits = 28;

class StateVector {
 public:
  StateVector() = default;
  // |0...0> on n qubits.
  explicit StateVector(int num_qubits);

  static StateVector basis(int num_qubits, std::uint64_t index);
  static StateVector from_amplitudes(int num_qubits, std::vector<cplx> amplitudes);

  int num_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  cplx& operator[](std::size_t i) { return amps_[i]; }

  Eigen::Map<const Eigen::VectorXcd> as_eigen() const {
    return {amps_.data(), static_cast<Eigen::Index>(amps_.size())};
  }
  Eigen::Map<Eigen::VectorXcd> as_eigen() {
    return {amps_.data(), static_cast<Eigen::Index>(amps_.size())};
  }

  double norm() const;
  void normalize();
  void scale(cplx factor);
  // this += a * x
  void axpy(cplx a, const StateVector& x);

  // Multiplies by the Pauli string, including its phase.
  void apply_pauli(const PauliString& p);
  // exp(-i angle G); G must be a hermitian Pauli string.
  void apply_rotation(const PauliString& generator, double angle);
  // factor * P on the control=|1> subspace, identity elsewhere.
  // |factor| must be 1 so the controlled operation stays unitary.
  void apply_controlled_pauli(int control, const PauliString& p, cplx factor = 1.0);
  void apply_controlled_rotation(int control, const PauliString& generator, double angle);
  // diag(1, e^{i angle}) on one qubit.
  void apply_phase(int qubit, double angle);
  void apply_single_qubit(int qubit, const Eigen::Matrix2cd& u);

 private:
  void check_operator(const PauliString& p) const;
  void check_control(int control, const PauliString& p) const;

  int n_ = 0;
  std::vector<cplx> amps_;
};

struct RotationGate {
  PauliString generator;
  double angle = 0.0;

  bool is_two_qubit() const { return generator.weight() == 2; }
  RotationGate inverse() const { return {generator, -angle}; }
};

// Every amplitude 2^{-n/2}.
StateVector plus_state(int num_qubits);

void apply_rotation(StateVector& state, const RotationGate& gate);
void apply_circuit(StateVector& state, std::span<const RotationGate> gates);

// sum_i conj(a_i) b_i
cplx inner(const StateVector& a, const StateVector& b);
// <psi|P|psi>
cplx expectation(const StateVector& state, const PauliString& p);
// <psi|obs|psi> for a hermitian sum.
double expectation(const StateVector& state, const WeightedPauliSum& obs);
// obs |psi>
StateVector apply_sum(const WeightedPauliSum& obs, const StateVector& state);

// Little-endian float64 pairs (re, im) per amplitude.
void write_state_binary(std::ostream& out, const StateVector& state);

}  // namespace isingtopo
