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

// Zero-noise extrapolation on a trajectory-sampled Pauli noise model.
//
// Noise: after every two-qubit gate application, with probability p2 one of
// the 15 non-identity two-qubit Paulis (uniform) hits the gate's qubits;
// after every single-qubit gate, with probability p1 one of X, Y, Z.
// Amplification folds two-qubit gates G -> G G^dagger G from the back of the
// circuit, and the fitted polynomial is evaluated at zero noise.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "isingtopo/pauli.hpp"
#include "isingtopo/shotproto.hpp"
#include "isingtopo/statevector.hpp"

namespace isingtopo {

struct NoiseModel {
  double p2 = 0.01;
  double p1 = 0.0;
};

void validate_noise(const NoiseModel& noise);

// 1.0, 1.2, ..., 3.0
std::vector<double> default_zne_factors();

struct ZneSchedule {
  std::vector<double> factors = default_zne_factors();
  int degree = 2;
};

void validate_schedule(const ZneSchedule& schedule);

int two_qubit_gate_count(std::span<const RotationGate> circuit);

// Number of two-qubit gates to fold so that n + 2k is as close as possible
// to factor * n; ties fold the larger number of gates.
int folds_for_factor(int two_qubit_gates, double factor);

std::vector<RotationGate> fold_gates(std::span<const RotationGate> circuit, double factor);

// Mean over trajectories of the exact per-trajectory expectation.
EstimateRecord noisy_expectation(const StateVector& initial, std::span<const RotationGate> circuit,
                                 const WeightedPauliSum& obs, const NoiseModel& noise, int trajectories,
                                 std::uint64_t seed, const std::string& stream_id = "noise");

// Least-squares polynomial fit of value against factor, evaluated at 0.
double extrapolate(const ZneSchedule& schedule, std::span<const double> factors, std::span<const double> values);

struct ZneReport {
  std::vector<double> factors;
  std::vector<EstimateRecord> estimates;
  double extrapolated = 0.0;
  double noiseless_reference = 0.0;
};

ZneReport run_zne(const StateVector& initial, std::span<const RotationGate> circuit, const WeightedPauliSum& obs,
                  const NoiseModel& noise, const ZneSchedule& schedule, int trajectories, std::uint64_t seed);

}  // namespace isingtopo
