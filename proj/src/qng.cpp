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

#include "isingtopo/qng.hpp"

#include <cmath>
#include <cstdio>

namespace isingtopo {
namespace {

constexpr cplx kMinusI{0.0, -1.0};

double relative_error(double energy, double target) {
  if (std::isnan(target)) return std::numeric_limits<double>::quiet_NaN();
  const double scale = std::abs(target);
  return scale > 0.0 ? std::abs(energy - target) / scale : std::abs(energy - target);
}

Eigen::MatrixXcd stack(const std::vector<StateVector>& states, std::size_t dim) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(states.size()));
  for (std::size_t p = 0; p < states.size(); ++p) m.col(static_cast<Eigen::Index>(p)) = states[p].as_eigen();
  return m;
}

MetricMatrix assemble_metric(const std::vector<StateVector>& derivs, const StateVector& psi) {
  const auto d = stack(derivs, psi.dim());
  const Eigen::Index np = d.cols();
  Eigen::MatrixXcd gram(np, np);
  gram.setZero();
  gram.selfadjointView<Eigen::Lower>().rankUpdate(d.adjoint());
  gram = gram.selfadjointView<Eigen::Lower>();
  const Eigen::VectorXcd overlap = d.adjoint() * psi.as_eigen();  // <d_p|psi>
  MetricMatrix g = (gram - overlap * overlap.adjoint()).real();
  return 0.5 * (g + g.transpose());
}

}  // namespace

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kTargetReached: return "target_reached";
    case StopReason::kGradientTolerance: return "gradient_tolerance";
    case StopReason::kMaxIterations: return "max_iterations";
    case StopReason::kStalled: return "stalled";
  }
  return "unknown";
}

StateVector derivative_state(const ParameterizedCircuit& circuit, std::span<const double> params, int p) {
  StateVector s = circuit.prepare_truncated(params, p, true);
  s.apply_pauli(circuit.generator(p));
  s.scale(kMinusI);
  circuit.apply_range(s, params, p + 1, circuit.num_parameters());
  return s;
}

StateVector derivative_state(const AnsatzSpec& spec, std::span<const double> params, int p) {
  return derivative_state(ansatz_circuit(spec), params, p);
}

std::vector<StateVector> derivative_states(const ParameterizedCircuit& circuit, std::span<const double> params) {
  const int np = circuit.num_parameters();
  if (params.size() != static_cast<std::size_t>(np)) throw_invalid("parameter vector length mismatch");
  std::vector<StateVector> derivs;
  derivs.reserve(static_cast<std::size_t>(np));
  StateVector cur = circuit.initial_state();
  for (int k = 0; k < np; ++k) {
    const auto& gk = circuit.generator(k);
    const double angle = params[static_cast<std::size_t>(k)];
    cur.apply_rotation(gk, angle);
    for (auto& d : derivs) d.apply_rotation(gk, angle);
    StateVector dk = cur;
    dk.apply_pauli(gk);
    dk.scale(kMinusI);
    derivs.push_back(std::move(dk));
  }
  return derivs;
}

Evaluation evaluate(const ParameterizedCircuit& circuit, std::span<const double> params, const WeightedPauliSum& h,
                    bool with_metric) {
  const StateVector psi = circuit.prepare(params);
  const auto derivs = derivative_states(circuit, params);
  const StateVector h_psi = apply_sum(h, psi);

  Evaluation out;
  out.energy = expectation(psi, h);
  out.gradient.resize(static_cast<Eigen::Index>(derivs.size()));
  for (std::size_t p = 0; p < derivs.size(); ++p) {
    out.gradient(static_cast<Eigen::Index>(p)) = 2.0 * inner(derivs[p], h_psi).real();
  }
  if (with_metric) out.metric = assemble_metric(derivs, psi);
  return out;
}

Eigen::VectorXd gradient_exact(const ParameterizedCircuit& circuit, std::span<const double> params,
                               const WeightedPauliSum& h) {
  if (!h.is_hermitian()) throw_invalid("gradient requires a hermitian cost operator");
  return evaluate(circuit, params, h, false).gradient;
}

Eigen::VectorXd gradient_exact(const AnsatzSpec& spec, std::span<const double> params, const WeightedPauliSum& h) {
  return gradient_exact(ansatz_circuit(spec), params, h);
}

MetricMatrix metric_exact(const ParameterizedCircuit& circuit, std::span<const double> params) {
  return assemble_metric(derivative_states(circuit, params), circuit.prepare(params));
}

MetricMatrix metric_exact(const AnsatzSpec& spec, std::span<const double> params) {
  return metric_exact(ansatz_circuit(spec), params);
}

Eigen::VectorXd solve_regularized(const MetricMatrix& metric, const Eigen::VectorXd& grad, const QngOptions& opts,
                                  double* lambda_used) {
  if (metric.rows() != grad.size() || metric.cols() != grad.size()) {
    throw_invalid("metric dimensions do not match gradient length");
  }
  double lambda = opts.tikhonov;
  const auto n = grad.size();
  for (int attempt = 0; attempt < opts.max_solve_attempts; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(metric + lambda * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() == Eigen::Success) {
      Eigen::VectorXd d = llt.solve(grad);
      if (d.allFinite()) {
        if (lambda_used) *lambda_used = lambda;
        return d;
      }
    }
    lambda *= 10.0;
  }
  char msg[128];
  std::snprintf(msg, sizeof msg, "metric solve failed up to Tikhonov shift %.3g", lambda / 10.0);
  throw_numerical(msg);
}

StepReport qng_step(const OptimizerState& state, const Eigen::VectorXd& grad, const MetricMatrix& metric,
                    const EnergyFunction& energy, const QngOptions& opts) {
  if (grad.size() != static_cast<Eigen::Index>(state.params.size())) {
    throw_invalid("gradient length does not match parameter count");
  }
  StepReport report;
  report.direction = solve_regularized(metric, grad, opts, &report.lambda_used);
  report.state = state;

  double step = state.learning_rate;
  ParameterVector trial(state.params.size());
  for (int h = 0; h <= opts.max_halvings; ++h) {
    for (std::size_t k = 0; k < trial.size(); ++k) {
      trial[k] = state.params[k] - step * report.direction(static_cast<Eigen::Index>(k));
    }
    const double e = energy(trial);
    if (e <= state.energy + opts.increase_tolerance) {
      report.state.params = trial;
      report.state.energy = e;
      report.state.iteration = state.iteration + 1;
      report.halvings = h;
      report.accepted = true;
      return report;
    }
    step *= 0.5;
  }
  report.halvings = opts.max_halvings;
  return report;
}

OptimizeResult optimize(const ParameterizedCircuit& circuit, const WeightedPauliSum& h, ParameterVector init,
                        const OptimizeOptions& opts, double target_energy) {
  if (!h.is_hermitian()) throw_invalid("cost operator must be hermitian");
  if (opts.max_iters < 0) throw_invalid("max_iters must be non-negative");
  const bool use_target = opts.use_oracle && !std::isnan(target_energy);

  OptimizeResult result;
  result.target_energy = use_target ? target_energy : std::numeric_limits<double>::quiet_NaN();
  result.state.params = std::move(init);
  result.state.learning_rate = opts.qng.learning_rate;

  const EnergyFunction energy = [&](std::span<const double> p) { return expectation(circuit.prepare(p), h); };

  for (int it = 0;; ++it) {
    const Evaluation ev = evaluate(circuit, result.state.params, h, opts.natural);
    result.state.energy = ev.energy;
    result.state.grad_norm = ev.gradient.norm();
    result.state.iteration = it;
    const double rel = relative_error(ev.energy, result.target_energy);
    result.rel_error = rel;
    result.trace.push_back({it, ev.energy, result.state.grad_norm, rel});

    if (use_target && rel < opts.target_rel_error) {
      result.converged = true;
      result.reason = StopReason::kTargetReached;
      break;
    }
    if (result.state.grad_norm < opts.grad_tol) {
      result.converged = !use_target;
      result.reason = StopReason::kGradientTolerance;
      break;
    }
    if (it >= opts.max_iters) {
      result.reason = StopReason::kMaxIterations;
      break;
    }
    const auto n = ev.gradient.size();
    const MetricMatrix metric = opts.natural ? ev.metric : MetricMatrix::Identity(n, n);
    StepReport step = qng_step(result.state, ev.gradient, metric, energy, opts.qng);
    if (!step.accepted) {
      result.reason = StopReason::kStalled;
      break;
    }
    result.state.params = std::move(step.state.params);
  }
  return result;
}

OptimizeResult optimize(const AnsatzSpec& spec, const ModelParams& model, const OptimizeOptions& opts) {
  if (spec.L != model.L || spec.boundary != model.boundary()) {
    throw_invalid("ansatz boundary and size must match the model");
  }
  const auto h = build_hamiltonian(model);
  double target = std::numeric_limits<double>::quiet_NaN();
  if (opts.use_oracle) target = exact_ground(model).ground_energy;
  return optimize(ansatz_circuit(spec), h, initial_parameters(spec, opts.seed), opts, target);
}

std::string trace_csv(std::span<const TraceRow> trace) {
  std::string out = "iter,energy,grad_norm,rel_error\n";
  char buf[160];
  for (const auto& r : trace) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", r.iter, r.energy, r.grad_norm, r.rel_error);
    out += buf;
  }
  return out;
}

}  // namespace isingtopo
