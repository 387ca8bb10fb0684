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

// Ising chain with a tunable impurity between sites j and j+1:
//
//   H(v) = -sum_{i<L} Z_i Z_{i+1} - sum_i X_i - b Z_L Z_1
//          + c1(v) (Z_j Z_{j+1} + X_j) + c2(v) Y_j Z_{j+1},
//
//   c1 = 2 sinh^2(v) / cosh(2v),  c2 = sinh(2v) / cosh(2v).
//
// Chain labels (j, r) are 1-based in this header's public types; Pauli sites
// are 0-based, so chain site k lives on qubit k - 1.

#include <span>
#include <string>
#include <vector>

#include "isingtopo/pauli.hpp"
#include "isingtopo/statevector.hpp"

namespace isingtopo {

enum class Boundary { kOpen = 0, kPeriodic = 1 };

// Oracle regime of exact_ground.
inline constexpr int kMaxOracleQubits = 14;
// Above this size exact_ground switches from the dense solver to Lanczos.
inline constexpr int kMaxDenseSolverQubits = 8;

struct ModelParams {
  int L = 2;
  int b = 0;        // boundary coupling, 0 (open) or 1 (periodic)
  double v = 0.0;   // impurity strength; +-infinity selects the duality defect
  int j = 1;        // defect between chain sites j and j+1 (mod L when b = 1)

  Boundary boundary() const { return b == 1 ? Boundary::kPeriodic : Boundary::kOpen; }
};

// Parameters with the defect at the chain centre, j = L/2.
ModelParams centred_params(int L, int b, double v);

struct DefectCoefficients {
  double bond_and_field;  // multiplies Z_j Z_{j+1} + X_j
  double yz;              // multiplies Y_j Z_{j+1}
};

DefectCoefficients defect_coefficients(double v);

// Kondo screening length e^{4v}.
double screening_length(double v);

// Throws on invalid L, b or j.
void validate_params(const ModelParams& p);

WeightedPauliSum build_hamiltonian(const ModelParams& p);

enum class EigenSolver { kAuto, kDense, kLanczos };

struct SpectrumResult {
  double ground_energy = 0.0;
  StateVector ground_state;
  double gap = 0.0;
  bool degenerate = false;  // gap below 1e-10
  double residual = 0.0;    // ||H psi - E psi||
  EigenSolver solver = EigenSolver::kAuto;
};

// Lowest eigenpair of a hermitian Pauli sum. The returned state's largest
// amplitude is made real and positive, fixing the global phase.
SpectrumResult lowest_eigenpair(const WeightedPauliSum& h, EigenSolver solver = EigenSolver::kAuto);

SpectrumResult exact_ground(const ModelParams& p, EigenSolver solver = EigenSolver::kAuto);

struct ScanRow {
  double v = 0.0;
  double L_over_lB = 0.0;
  double ground_energy = 0.0;
  double gap = 0.0;
};

std::vector<ScanRow> energy_scan(int L, int b, std::span<const double> v_list, int j);
// "v,L_over_lB,ground_energy,gap" header plus one line per row.
std::string scan_csv(std::span<const ScanRow> rows);

}  // namespace isingtopo
