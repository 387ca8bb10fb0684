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

// Measurement-based estimation with an ancilla-controlled interference
// circuit. The ancilla is prepared in |+>, controlled operations act on the
// register when the ancilla is |1>, and the ancilla is measured in the X or Y
// basis. With |phi_0>, |phi_1> the register states of the two control
// branches,
//
//   <X_anc> = Re <phi_0|phi_1>,   <Y_anc> = Im <phi_0|phi_1>.
//
// The register and the ancilla are simulated together as one (n+1)-qubit
// statevector; the ancilla is the most significant qubit.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "isingtopo/ansatz.hpp"
#include "isingtopo/pauli.hpp"
#include "isingtopo/qng.hpp"
#include "isingtopo/statevector.hpp"

namespace isingtopo {

enum class MeasureBasis { kX, kY };

char basis_char(MeasureBasis b);

struct ShotPlan {
  std::int64_t shots = 1024;  // per run and circuit
  int runs = 1;               // independent repetitions, pooled
  std::uint64_t seed = 1;
  bool analytic = false;      // infinite-shot limit: exact ancilla expectation
};

void validate_plan(const ShotPlan& plan);

struct EstimateRecord {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t shots_used = 0;
  std::string circuit_id;
  MeasureBasis basis = MeasureBasis::kX;
};

// factor * op on the control=|1> branch; |factor| = 1.
struct ControlledPauli {
  PauliString op;
  cplx factor = 1.0;
};

struct ControlledRotation {
  RotationGate gate;
};

// diag(1, e^{i angle}) on the ancilla: a phase on the control=|1> branch.
struct AncillaPhase {
  double angle = 0.0;
};

using RecipeStep = std::variant<RotationGate, ControlledPauli, ControlledRotation, AncillaPhase>;

struct HadamardRecipe {
  StateVector initial;  // register state before the first step
  std::vector<RecipeStep> steps;
  std::string circuit_id;
};

// Ancilla + register simulator for one interference circuit.
class HadamardRegister {
 public:
  explicit HadamardRegister(const StateVector& initial);

  int register_qubits() const noexcept { return n_; }
  const StateVector& state() const noexcept { return full_; }

  void apply(const RecipeStep& step);
  void apply_gate(const RotationGate& gate);
  void apply_controlled(const ControlledPauli& op);
  void apply_controlled(const ControlledRotation& op);
  void apply_ancilla_phase(double angle);

  // Exact <X_anc> or <Y_anc>.
  double ancilla_expectation(MeasureBasis basis) const;
  // Purity tr(rho_anc^2) of the reduced ancilla state.
  double ancilla_purity() const;
  EstimateRecord measure(MeasureBasis basis, const ShotPlan& plan, const std::string& circuit_id) const;

 private:
  PauliString lift(const PauliString& p) const;

  int n_;
  StateVector full_;
};

EstimateRecord hadamard_test(const HadamardRecipe& recipe, MeasureBasis basis, const ShotPlan& plan);

// Draws runs x shots outcomes of a +-1 observable with the given mean; the
// stream depends only on (plan.seed, circuit_id).
EstimateRecord sample_binary(double expectation, MeasureBasis basis, const ShotPlan& plan,
                             const std::string& circuit_id);

// Component p = 2 sum_j c_j <X_anc>_{p,j}, where circuit (p, j) inserts a
// controlled (-i O_p) after gate p, runs the remaining gates and ends with a
// controlled h_j. Identity terms contribute exactly zero and are skipped.
Eigen::VectorXd gradient_shot(const ParameterizedCircuit& circuit, std::span<const double> params,
                              const WeightedPauliSum& h, const ShotPlan& plan,
                              std::vector<EstimateRecord>* log = nullptr);

// g_pq = X_pq - m_p m_q for p <= q, where X_pq = Re<d_p|d_q> comes from a
// controlled (-i O_p) after gate p followed, after gate q, by a controlled
// (+i O_q) (X basis), and m_p = Im <psi_p|(-i O_p)|psi_p> from a single
// controlled (-i O_p) (Y basis), so that <d_p|psi><psi|d_q> = m_p m_q.
MetricMatrix metric_shot(const ParameterizedCircuit& circuit, std::span<const double> params, const ShotPlan& plan,
                         std::vector<EstimateRecord>* log = nullptr);

// Rotates the measured qubits into the computational basis, samples
// bitstrings and averages the eigenvalue products.
EstimateRecord sample_pauli_expectation(const StateVector& state, const PauliString& obs, const ShotPlan& plan,
                                        const std::string& circuit_id = {});

// Energy from per-term sampling: sum_j c_j <h_j>, errors added in quadrature.
EstimateRecord measure_energy(const StateVector& state, const WeightedPauliSum& h, const ShotPlan& plan,
                              const std::string& circuit_prefix = "energy");

// "circuit_id,basis,shots,value,std_error"
std::string estimates_csv(std::span<const EstimateRecord> records);

}  // namespace isingtopo
