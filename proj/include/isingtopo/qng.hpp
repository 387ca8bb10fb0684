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

// Quantum natural gradient on exact statevectors.
//
// For a circuit |psi> = U_P ... U_1 |psi_0> with U_k = exp(-i theta_k O_k),
// the derivative state is |d_p psi> = U_{>p} (-i O_p) U_{<=p} |psi_0>, and the
// Fubini-Study metric is g_pq = Re(<d_p|d_q> - <d_p|psi><psi|d_q>).

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "isingtopo/ansatz.hpp"
#include "isingtopo/model.hpp"
#include "isingtopo/pauli.hpp"
#include "isingtopo/statevector.hpp"

namespace isingtopo {

using MetricMatrix = Eigen::MatrixXd;

StateVector derivative_state(const ParameterizedCircuit& circuit, std::span<const double> params, int p);
StateVector derivative_state(const AnsatzSpec& spec, std::span<const double> params, int p);

// All P derivative states in one forward sweep.
std::vector<StateVector> derivative_states(const ParameterizedCircuit& circuit, std::span<const double> params);

// Component p is 2 Re <d_p psi| H |psi>.
Eigen::VectorXd gradient_exact(const ParameterizedCircuit& circuit, std::span<const double> params,
                               const WeightedPauliSum& h);
Eigen::VectorXd gradient_exact(const AnsatzSpec& spec, std::span<const double> params, const WeightedPauliSum& h);

MetricMatrix metric_exact(const ParameterizedCircuit& circuit, std::span<const double> params);
MetricMatrix metric_exact(const AnsatzSpec& spec, std::span<const double> params);

struct Evaluation {
  double energy = 0.0;
  Eigen::VectorXd gradient;
  MetricMatrix metric;
};

// Energy, gradient and metric sharing one set of derivative states.
Evaluation evaluate(const ParameterizedCircuit& circuit, std::span<const double> params,
                    const WeightedPauliSum& h, bool with_metric = true);

struct QngOptions {
  double learning_rate = 0.05;
  double tikhonov = 1e-4;       // diagonal shift, escalated x10 on solve failure
  int max_solve_attempts = 8;
  int max_halvings = 8;
  double increase_tolerance = 1e-9;
};

struct OptimizerState {
  ParameterVector params;
  int iteration = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double learning_rate = 0.05;
};

struct StepReport {
  OptimizerState state;
  Eigen::VectorXd direction;  // solution d of (g + lambda I) d = grad
  double lambda_used = 0.0;
  int halvings = 0;
  bool accepted = false;
};

using EnergyFunction = std::function<double(std::span<const double>)>;

// Solves (metric + lambda I) d = grad, escalating lambda on failure.
Eigen::VectorXd solve_regularized(const MetricMatrix& metric, const Eigen::VectorXd& grad, const QngOptions& opts,
                                  double* lambda_used = nullptr);

// theta <- theta - eta d, halving the step while the energy rises by more
// than the tolerance. A step that still raises the energy after the last
// halving is rejected and the input state returned unchanged.
StepReport qng_step(const OptimizerState& state, const Eigen::VectorXd& grad, const MetricMatrix& metric,
                    const EnergyFunction& energy, const QngOptions& opts = {});

struct OptimizeOptions {
  QngOptions qng;
  int max_iters = 2000;
  double target_rel_error = 1e-3;
  double grad_tol = 1e-6;
  bool use_oracle = true;
  bool natural = true;  // false: identity metric (plain gradient descent)
  std::uint64_t seed = 1;
};

enum class StopReason { kTargetReached, kGradientTolerance, kMaxIterations, kStalled };

std::string to_string(StopReason r);

struct TraceRow {
  int iter = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double rel_error = std::numeric_limits<double>::quiet_NaN();
};

struct OptimizeResult {
  OptimizerState state;
  std::vector<TraceRow> trace;
  bool converged = false;
  StopReason reason = StopReason::kMaxIterations;
  double target_energy = std::numeric_limits<double>::quiet_NaN();
  double rel_error = std::numeric_limits<double>::quiet_NaN();
};

// Generic loop; `target_energy` may be NaN when no oracle is available.
OptimizeResult optimize(const ParameterizedCircuit& circuit, const WeightedPauliSum& h, ParameterVector init,
                        const OptimizeOptions& opts, double target_energy);

// Ansatz + model driver: seeded initial parameters, oracle target from
// exact_ground when opts.use_oracle is set.
OptimizeResult optimize(const AnsatzSpec& spec, const ModelParams& model, const OptimizeOptions& opts);

// "iter,energy,grad_norm,rel_error"
std::string trace_csv(std::span<const TraceRow> trace);

}  // namespace isingtopo
