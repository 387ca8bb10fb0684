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

#include "isingtopo/statevector.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <ostream>

namespace isingtopo {
namespace {

inline double parity_sign(std::uint64_t b, std::uint64_t z) {
  return (std::popcount(b & z) & 1) ? -1.0 : 1.0;
}

// Index of the k-th basis state whose bit `pos` is zero.
inline std::uint64_t insert_zero_bit(std::uint64_t k, int pos) {
  const std::uint64_t low = k & ((std::uint64_t{1} << pos) - 1);
  return ((k >> pos) << (pos + 1)) | low;
}

// In-place: amps <- diag * amps + off * G amps on the basis states that
// satisfy (b & cmask) == cmask.
void kernel(std::vector<cplx>& amps, const PauliString& g, std::uint64_t cmask, cplx diag, cplx off) {
  const std::uint64_t x = g.x_mask();
  const std::uint64_t z = g.z_mask();
  const cplx f = g.symplectic_phase();
  const std::uint64_t dim = amps.size();
  if (x == 0) {
    // G|b> = f s(b) |b>: two possible multipliers.
    const cplx plus = diag + off * f;
    const cplx minus = diag - off * f;
    for (std::uint64_t b = 0; b < dim; ++b) {
      if ((b & cmask) != cmask) continue;
      amps[b] *= (std::popcount(b & z) & 1) ? minus : plus;
    }
    return;
  }
  const int pivot = 63 - std::countl_zero(x);
  const std::uint64_t half = dim >> 1;
  const cplx offf = off * f;
  for (std::uint64_t k = 0; k < half; ++k) {
    const std::uint64_t b = insert_zero_bit(k, pivot);
    if ((b & cmask) != cmask) continue;
    const std::uint64_t bp = b ^ x;
    const cplx a0 = amps[b];
    const cplx a1 = amps[bp];
    // G|b> = f s(b) |b'>, G|b'> = f s(b') |b>
    amps[b] = diag * a0 + offf * parity_sign(bp, z) * a1;
    amps[bp] = diag * a1 + offf * parity_sign(b, z) * a0;
  }
}

}  // namespace

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxStateQubits) {
    throw_range("statevector size must be 1.." + std::to_string(kMaxStateQubits) + " qubits, got " +
                std::to_string(num_qubits));
  }
  amps_.assign(std::size_t{1} << num_qubits, cplx(0.0, 0.0));
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.dim()) throw_range("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(int num_qubits, std::vector<cplx> amplitudes) {
  StateVector s(num_qubits);
  if (amplitudes.size() != s.dim()) throw_invalid("amplitude count does not match 2^n");
  s.amps_ = std::move(amplitudes);
  return s;
}

double StateVector::norm() const {
  double total = 0.0;
  for (const cplx& a : amps_) total += std::norm(a);
  return std::sqrt(total);
}

void StateVector::normalize() {
  const double nrm = norm();
  if (!(nrm > 0.0)) throw_numerical("cannot normalize a zero vector");
  scale(1.0 / nrm);
}

void StateVector::scale(cplx factor) {
  for (cplx& a : amps_) a *= factor;
}

void StateVector::axpy(cplx a, const StateVector& x) {
  if (x.dim() != dim()) throw_invalid("state size mismatch");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += a * x.amps_[i];
}

void StateVector::check_operator(const PauliString& p) const {
  if (p.num_qubits() > n_) throw_range("operator register larger than state");
  if (p.weight() > 0 && 64 - std::countl_zero(p.x_mask() | p.z_mask()) > n_) {
    throw_range("operator acts on sites outside the state");
  }
}

void StateVector::check_control(int control, const PauliString& p) const {
  if (control < 0 || control >= n_) throw_range("control qubit out of range");
  const std::uint64_t cbit = std::uint64_t{1} << control;
  if ((p.x_mask() | p.z_mask()) & cbit) throw_invalid("control qubit overlaps the controlled operator");
}

void StateVector::apply_pauli(const PauliString& p) {
  check_operator(p);
  kernel(amps_, p, 0, 0.0, 1.0);
}

void StateVector::apply_rotation(const PauliString& generator, double angle) {
  check_operator(generator);
  if (!generator.is_hermitian()) throw_invalid("rotation generator must be hermitian");
  kernel(amps_, generator, 0, std::cos(angle), cplx(0.0, -std::sin(angle)));
}

void StateVector::apply_controlled_pauli(int control, const PauliString& p, cplx factor) {
  check_operator(p);
  check_control(control, p);
  if (std::abs(std::abs(factor) - 1.0) > 1e-12) throw_invalid("controlled Pauli factor must have unit modulus");
  kernel(amps_, p, std::uint64_t{1} << control, 0.0, factor);
}

void StateVector::apply_controlled_rotation(int control, const PauliString& generator, double angle) {
  check_operator(generator);
  check_control(control, generator);
  if (!generator.is_hermitian()) throw_invalid("rotation generator must be hermitian");
  kernel(amps_, generator, std::uint64_t{1} << control, std::cos(angle), cplx(0.0, -std::sin(angle)));
}

void StateVector::apply_phase(int qubit, double angle) {
  if (qubit < 0 || qubit >= n_) throw_range("phase qubit out of range");
  const cplx ph = std::polar(1.0, angle);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  for (std::uint64_t b = 0; b < amps_.size(); ++b) {
    if (b & bit) amps_[b] *= ph;
  }
}

void StateVector::apply_single_qubit(int qubit, const Eigen::Matrix2cd& u) {
  if (qubit < 0 || qubit >= n_) throw_range("qubit out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  const std::uint64_t half = amps_.size() >> 1;
  for (std::uint64_t k = 0; k < half; ++k) {
    const std::uint64_t b0 = insert_zero_bit(k, qubit);
    const std::uint64_t b1 = b0 | bit;
    const cplx a0 = amps_[b0];
    const cplx a1 = amps_[b1];
    amps_[b0] = u(0, 0) * a0 + u(0, 1) * a1;
    amps_[b1] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

StateVector plus_state(int num_qubits) {
  StateVector s(num_qubits);
  const double a = std::pow(2.0, -0.5 * num_qubits);
  for (cplx& amp : s.amplitudes()) amp = a;
  return s;
}

void apply_rotation(StateVector& state, const RotationGate& gate) {
  state.apply_rotation(gate.generator, gate.angle);
}

void apply_circuit(StateVector& state, std::span<const RotationGate> gates) {
  for (const auto& g : gates) state.apply_rotation(g.generator, g.angle);
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw_invalid("inner product of states with different sizes");
  cplx total = 0.0;
  const auto aa = a.amplitudes();
  const auto bb = b.amplitudes();
  for (std::size_t i = 0; i < aa.size(); ++i) total += std::conj(aa[i]) * bb[i];
  return total;
}

cplx expectation(const StateVector& state, const PauliString& p) {
  if (p.num_qubits() > state.num_qubits()) throw_range("operator register larger than state");
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const auto amps = state.amplitudes();
  cplx total = 0.0;
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    total += std::conj(amps[b ^ x]) * parity_sign(b, z) * amps[b];
  }
  return total * p.symplectic_phase();
}

double expectation(const StateVector& state, const WeightedPauliSum& obs) {
  if (!obs.is_hermitian()) throw_invalid("expectation requires a hermitian observable");
  cplx total = 0.0;
  for (const auto& t : obs.terms()) total += t.coefficient * expectation(state, t.string);
  const double scale = std::max(1.0, obs.l1_norm()) * std::max(1.0, state.norm() * state.norm());
  if (std::abs(total.imag()) > 1e-10 * scale) {
    throw_numerical("expectation has imaginary residue " + std::to_string(total.imag()));
  }
  return total.real();
}

StateVector apply_sum(const WeightedPauliSum& obs, const StateVector& state) {
  StateVector out = state;
  out.scale(0.0);
  const auto in = state.amplitudes();
  auto acc = out.amplitudes();
  for (const auto& t : obs.terms()) {
    if (t.string.num_qubits() > state.num_qubits()) throw_range("operator register larger than state");
    const std::uint64_t x = t.string.x_mask();
    const std::uint64_t z = t.string.z_mask();
    const cplx c = t.coefficient * t.string.symplectic_phase();
    for (std::uint64_t b = 0; b < in.size(); ++b) acc[b ^ x] += c * parity_sign(b, z) * in[b];
  }
  return out;
}

void write_state_binary(std::ostream& out, const StateVector& state) {
  static_assert(sizeof(double) == 8);
  for (const cplx& a : state.amplitudes()) {
    for (double v : {a.real(), a.imag()}) {
      std::uint64_t bits = 0;
      std::memcpy(&bits, &v, 8);
      unsigned char bytes[8];
      for (int k = 0; k < 8; ++k) bytes[k] = static_cast<unsigned char>((bits >> (8 * k)) & 0xFFU);
      out.write(reinterpret_cast<const char*>(bytes), 8);
    }
  }
}

}  // namespace isingtopo
