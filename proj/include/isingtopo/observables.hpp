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

// Defect-sensitive observables: the two-point function <Z_1 Z_r> and the
// loop operator
//
//   Ybar = (-q)^L g_1^{-1} ... g_{2L-1}^{-1} + h.c.,   q = i e^{i pi/4},
//   g_{2j-1} = q exp(i pi X_j / 4),   g_{2j} = q exp(i pi Z_j Z_{j+1} / 4),
//
// with chain labels j and r 1-based. The ground state of the critical
// periodic chain is a Ybar eigenstate with |eigenvalue| = sqrt(2).

#include <span>
#include <string>
#include <vector>

#include "isingtopo/ansatz.hpp"
#include "isingtopo/pauli.hpp"
#include "isingtopo/shotproto.hpp"
#include "isingtopo/statevector.hpp"

namespace isingtopo {

// <Z_1 Z_r>, 1 <= r <= L.
double correlator_zz(const StateVector& state, int r);

struct CorrelatorPoint {
  int r = 1;
  double value = 0.0;
  double std_error = 0.0;
};

std::vector<CorrelatorPoint> correlator_profile(const StateVector& state);
std::vector<CorrelatorPoint> correlator_profile_sampled(const StateVector& state, const ShotPlan& plan);
// "r,value,std_error"
std::string correlator_csv(std::span<const CorrelatorPoint> points);

cplx braid_q();

class BraidOperator {
 public:
  BraidOperator(int L, int index);

  int index() const noexcept { return index_; }
  // X_j for odd index 2j-1, Z_j Z_{j+1} for even index 2j.
  const PauliString& generator() const noexcept { return generator_; }

  void apply(StateVector& state) const;
  void apply_inverse(StateVector& state) const;
  WeightedPauliSum as_sum() const;
  WeightedPauliSum inverse_as_sum() const;

 private:
  int L_;
  int index_;
  PauliString generator_;
};

// (-q)^L
cplx loop_prefactor(int L);

// Applies g_1^{-1} ... g_{2L-1}^{-1}; g_{2L-1}^{-1} acts first.
void apply_inverse_braid_product(StateVector& state);

// (-q)^L <psi| g_1^{-1} ... g_{2L-1}^{-1} |psi>; Ybar = 2 Re of this.
cplx loop_amplitude(const StateVector& state);
double ybar_exact(const StateVector& state);

// Ybar as a merged Pauli sum (2^{2L-1} products before merging).
WeightedPauliSum ybar_operator(int L);

// Controlled-braid interference circuit: the register is prepared by
// `prefix` (applied to `initial`), then controlled g^{-1} for indices
// 2L-1 down to 1, with every scalar factor folded into one ancilla phase of
// angle arg((-q)^L q^{-(2L-1)}). The X-basis mean is Re[(-q)^L <Pi g^{-1}>].
HadamardRecipe ybar_recipe(const StateVector& initial, std::span<const RotationGate> prefix);

// 2 x (X-basis mean) with doubled standard error.
EstimateRecord ybar_hadamard(const AnsatzSpec& spec, std::span<const double> params, const ShotPlan& plan);
EstimateRecord ybar_hadamard(const StateVector& state, const ShotPlan& plan);

// Purity of the ancilla after the controlled-braid circuit (analytic).
double ybar_ancilla_purity(const StateVector& state);

}  // namespace isingtopo
