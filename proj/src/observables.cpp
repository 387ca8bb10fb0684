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

#include "isingtopo/observables.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace isingtopo {
namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

PauliString z1_zr(int L, int r) {
  if (r < 1 || r > L) throw_range("correlator site r must be in 1.." + std::to_string(L) + ", got " + std::to_string(r));
  if (r == 1) return PauliString(L);
  return PauliString(L, {{0, Pauli::Z}, {r - 1, Pauli::Z}});
}

}  // namespace

double correlator_zz(const StateVector& state, int r) {
  return expectation(state, z1_zr(state.num_qubits(), r)).real();
}

std::vector<CorrelatorPoint> correlator_profile(const StateVector& state) {
  std::vector<CorrelatorPoint> out;
  for (int r = 1; r <= state.num_qubits(); ++r) out.push_back({r, correlator_zz(state, r), 0.0});
  return out;
}

std::vector<CorrelatorPoint> correlator_profile_sampled(const StateVector& state, const ShotPlan& plan) {
  std::vector<CorrelatorPoint> out;
  for (int r = 1; r <= state.num_qubits(); ++r) {
    const auto rec = sample_pauli_expectation(state, z1_zr(state.num_qubits(), r), plan, "zz/r=" + std::to_string(r));
    out.push_back({r, rec.value, rec.std_error});
  }
  return out;
}

std::string correlator_csv(std::span<const CorrelatorPoint> points) {
  std::string out = "r,value,std_error\n";
  char buf[96];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", p.r, p.value, p.std_error);
    out += buf;
  }
  return out;
}

cplx braid_q() { return cplx(0.0, 1.0) * std::polar(1.0, kQuarterPi); }

BraidOperator::BraidOperator(int L, int index) : L_(L), index_(index) {
  if (L < 2) throw_invalid("braid operators need L >= 2");
  if (index < 1 || index > 2 * L - 1) {
    throw_range("braid index must be in 1.." + std::to_string(2 * L - 1) + ", got " + std::to_string(index));
  }
  if (index % 2 == 1) {
    generator_ = PauliString::single(L, (index + 1) / 2 - 1, Pauli::X);
  } else {
    const int j = index / 2 - 1;
    generator_ = PauliString(L, {{j, Pauli::Z}, {j + 1, Pauli::Z}});
  }
}

// exp(i pi O / 4) = R_O(-pi/4) in the exp(-i angle O) convention.
void BraidOperator::apply(StateVector& state) const {
  state.apply_rotation(generator_, -kQuarterPi);
  state.scale(braid_q());
}

void BraidOperator::apply_inverse(StateVector& state) const {
  state.apply_rotation(generator_, kQuarterPi);
  state.scale(1.0 / braid_q());
}

WeightedPauliSum BraidOperator::as_sum() const {
  const double c = std::cos(kQuarterPi);
  WeightedPauliSum out(L_);
  out.add(braid_q() * c, PauliString(L_));
  out.add(braid_q() * cplx(0.0, c), generator_);
  return out;
}

WeightedPauliSum BraidOperator::inverse_as_sum() const {
  const double c = std::cos(kQuarterPi);
  WeightedPauliSum out(L_);
  out.add(c / braid_q(), PauliString(L_));
  out.add(cplx(0.0, -c) / braid_q(), generator_);
  return out;
}

cplx loop_prefactor(int L) { return std::pow(-braid_q(), L); }

void apply_inverse_braid_product(StateVector& state) {
  const int L = state.num_qubits();
  for (int k = 2 * L - 1; k >= 1; --k) BraidOperator(L, k).apply_inverse(state);
}

cplx loop_amplitude(const StateVector& state) {
  StateVector moved = state;
  apply_inverse_braid_product(moved);
  return loop_prefactor(state.num_qubits()) * inner(state, moved);
}

double ybar_exact(const StateVector& state) { return 2.0 * loop_amplitude(state).real(); }

WeightedPauliSum ybar_operator(int L) {
  WeightedPauliSum product = to_sum(PauliString(L), loop_prefactor(L));
  for (int k = 1; k <= 2 * L - 1; ++k) product = product * BraidOperator(L, k).inverse_as_sum();
  return product + product.adjoint();
}

HadamardRecipe ybar_recipe(const StateVector& initial, std::span<const RotationGate> prefix) {
  const int L = initial.num_qubits();
  HadamardRecipe recipe;
  recipe.initial = initial;
  recipe.circuit_id = "ybar/L=" + std::to_string(L);
  for (const auto& g : prefix) recipe.steps.emplace_back(g);
  for (int k = 2 * L - 1; k >= 1; --k) {
    recipe.steps.emplace_back(ControlledRotation{{BraidOperator(L, k).generator(), kQuarterPi}});
  }
  const cplx scalar = loop_prefactor(L) * std::pow(braid_q(), -(2 * L - 1));
  recipe.steps.emplace_back(AncillaPhase{std::arg(scalar)});
  return recipe;
}

namespace {

EstimateRecord doubled(EstimateRecord rec) {
  rec.value *= 2.0;
  rec.std_error *= 2.0;
  return rec;
}

}  // namespace

EstimateRecord ybar_hadamard(const AnsatzSpec& spec, std::span<const double> params, const ShotPlan& plan) {
  const auto circuit = ansatz_circuit(spec);
  const auto gates = circuit.bind(params);
  return doubled(hadamard_test(ybar_recipe(circuit.initial_state(), gates), MeasureBasis::kX, plan));
}

EstimateRecord ybar_hadamard(const StateVector& state, const ShotPlan& plan) {
  return doubled(hadamard_test(ybar_recipe(state, {}), MeasureBasis::kX, plan));
}

double ybar_ancilla_purity(const StateVector& state) {
  const auto recipe = ybar_recipe(state, {});
  HadamardRegister reg(recipe.initial);
  for (const auto& step : recipe.steps) reg.apply(step);
  return reg.ancilla_purity();
}

}  // namespace isingtopo
