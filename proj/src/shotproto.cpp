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

#include "isingtopo/shotproto.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "isingtopo/rng.hpp"

namespace isingtopo {
namespace {

constexpr cplx kI{0.0, 1.0};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string run_stream(const std::string& circuit_id, int run) {
  return circuit_id + "#run" + std::to_string(run);
}

}  // namespace

char basis_char(MeasureBasis b) { return b == MeasureBasis::kX ? 'X' : 'Y'; }

void validate_plan(const ShotPlan& plan) {
  if (plan.analytic) return;
  if (plan.shots < 1) throw_invalid("shots must be positive, got " + std::to_string(plan.shots));
  if (plan.runs < 1) throw_invalid("runs must be positive, got " + std::to_string(plan.runs));
}

HadamardRegister::HadamardRegister(const StateVector& initial) : n_(initial.num_qubits()), full_(n_ + 1) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto in = initial.amplitudes();
  auto out = full_.amplitudes();
  const std::size_t half = in.size();
  for (std::size_t b = 0; b < half; ++b) {
    out[b] = r * in[b];
    out[b + half] = r * in[b];
  }
}

PauliString HadamardRegister::lift(const PauliString& p) const {
  if (p.num_qubits() != n_) throw_invalid("operator register does not match the Hadamard-test register");
  return PauliString::from_masks(n_ + 1, p.x_mask(), p.z_mask(), p.phase());
}

void HadamardRegister::apply(const RecipeStep& step) {
  std::visit(Overloaded{
                 [this](const RotationGate& g) { apply_gate(g); },
                 [this](const ControlledPauli& c) { apply_controlled(c); },
                 [this](const ControlledRotation& c) { apply_controlled(c); },
                 [this](const AncillaPhase& a) { apply_ancilla_phase(a.angle); },
             },
             step);
}

void HadamardRegister::apply_gate(const RotationGate& gate) { full_.apply_rotation(lift(gate.generator), gate.angle); }

void HadamardRegister::apply_controlled(const ControlledPauli& op) {
  full_.apply_controlled_pauli(n_, lift(op.op), op.factor);
}

void HadamardRegister::apply_controlled(const ControlledRotation& op) {
  full_.apply_controlled_rotation(n_, lift(op.gate.generator), op.gate.angle);
}

void HadamardRegister::apply_ancilla_phase(double angle) { full_.apply_phase(n_, angle); }

double HadamardRegister::ancilla_expectation(MeasureBasis basis) const {
  const Pauli p = basis == MeasureBasis::kX ? Pauli::X : Pauli::Y;
  return expectation(full_, PauliString::single(n_ + 1, n_, p)).real();
}

double HadamardRegister::ancilla_purity() const {
  const auto a = full_.amplitudes();
  const std::size_t half = a.size() / 2;
  double r00 = 0.0;
  double r11 = 0.0;
  cplx r01 = 0.0;
  for (std::size_t b = 0; b < half; ++b) {
    r00 += std::norm(a[b]);
    r11 += std::norm(a[b + half]);
    r01 += a[b] * std::conj(a[b + half]);
  }
  return r00 * r00 + r11 * r11 + 2.0 * std::norm(r01);
}

EstimateRecord HadamardRegister::measure(MeasureBasis basis, const ShotPlan& plan,
                                         const std::string& circuit_id) const {
  return sample_binary(ancilla_expectation(basis), basis, plan, circuit_id);
}

EstimateRecord sample_binary(double expectation, MeasureBasis basis, const ShotPlan& plan,
                             const std::string& circuit_id) {
  validate_plan(plan);
  EstimateRecord rec;
  rec.circuit_id = circuit_id;
  rec.basis = basis;
  if (plan.analytic) {
    rec.value = expectation;
    return rec;
  }
  const double p_plus = std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
  std::int64_t plus = 0;
  for (int r = 0; r < plan.runs; ++r) {
    std::mt19937_64 rng(derive_seed(plan.seed, run_stream(circuit_id, r)));
    std::binomial_distribution<std::int64_t> draw(plan.shots, p_plus);
    plus += draw(rng);
  }
  const std::int64_t total = plan.shots * plan.runs;
  rec.shots_used = total;
  rec.value = static_cast<double>(2 * plus - total) / static_cast<double>(total);
  rec.std_error = std::sqrt(std::max(0.0, 1.0 - rec.value * rec.value) / static_cast<double>(total));
  return rec;
}

EstimateRecord hadamard_test(const HadamardRecipe& recipe, MeasureBasis basis, const ShotPlan& plan) {
  HadamardRegister reg(recipe.initial);
  for (const auto& step : recipe.steps) reg.apply(step);
  return reg.measure(basis, plan, recipe.circuit_id);
}

Eigen::VectorXd gradient_shot(const ParameterizedCircuit& circuit, std::span<const double> params,
                              const WeightedPauliSum& h, const ShotPlan& plan, std::vector<EstimateRecord>* log) {
  validate_plan(plan);
  if (!h.is_hermitian()) throw_invalid("gradient requires a hermitian cost operator");
  const auto gates = circuit.bind(params);
  const auto terms = h.terms();
  const int np = circuit.num_parameters();
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(np);

  for (int p = 0; p < np; ++p) {
    HadamardRegister reg(circuit.initial_state());
    for (int k = 0; k <= p; ++k) reg.apply_gate(gates[static_cast<std::size_t>(k)]);
    reg.apply_controlled(ControlledPauli{circuit.generator(p), -kI});
    for (int k = p + 1; k < np; ++k) reg.apply_gate(gates[static_cast<std::size_t>(k)]);
    // Every term shares the circuit up to the final controlled h_j.
    double total = 0.0;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (terms[j].string.is_identity()) continue;
      HadamardRegister leaf = reg;
      leaf.apply_controlled(ControlledPauli{terms[j].string, 1.0});
      auto rec = leaf.measure(MeasureBasis::kX, plan, "grad/p=" + std::to_string(p) + "/term=" + std::to_string(j));
      total += terms[j].coefficient.real() * rec.value;
      if (log) log->push_back(std::move(rec));
    }
    grad(p) = 2.0 * total;
  }
  return grad;
}

MetricMatrix metric_shot(const ParameterizedCircuit& circuit, std::span<const double> params, const ShotPlan& plan,
                         std::vector<EstimateRecord>* log) {
  validate_plan(plan);
  const auto gates = circuit.bind(params);
  const int np = circuit.num_parameters();
  MetricMatrix g = MetricMatrix::Zero(np, np);
  Eigen::VectorXd m(np);

  HadamardRegister prefix(circuit.initial_state());
  for (int p = 0; p < np; ++p) {
    prefix.apply_gate(gates[static_cast<std::size_t>(p)]);
    HadamardRegister reg = prefix;
    reg.apply_controlled(ControlledPauli{circuit.generator(p), -kI});

    auto yrec = reg.measure(MeasureBasis::kY, plan, "metric/y/p=" + std::to_string(p));
    m(p) = yrec.value;
    if (log) log->push_back(std::move(yrec));

    for (int q = p; q < np; ++q) {
      if (q > p) reg.apply_gate(gates[static_cast<std::size_t>(q)]);
      HadamardRegister leaf = reg;
      leaf.apply_controlled(ControlledPauli{circuit.generator(q), kI});
      auto xrec = leaf.measure(MeasureBasis::kX, plan,
                               "metric/x/p=" + std::to_string(p) + "/q=" + std::to_string(q));
      g(p, q) = xrec.value;
      if (log) log->push_back(std::move(xrec));
    }
  }
  for (int p = 0; p < np; ++p) {
    for (int q = p; q < np; ++q) {
      g(p, q) -= m(p) * m(q);
      g(q, p) = g(p, q);
    }
  }
  return g;
}

EstimateRecord sample_pauli_expectation(const StateVector& state, const PauliString& obs, const ShotPlan& plan,
                                        const std::string& circuit_id) {
  validate_plan(plan);
  if (!obs.is_hermitian()) throw_invalid("measured Pauli string must be hermitian");
  if (obs.num_qubits() > state.num_qubits()) throw_range("observable register larger than state");
  const std::string id = circuit_id.empty() ? "pauli/" + obs.to_string() : circuit_id;
  const double sign = obs.phase().real() < 0 ? -1.0 : 1.0;

  EstimateRecord rec;
  rec.circuit_id = id;
  if (obs.is_identity()) {
    rec.value = sign;
    rec.shots_used = plan.analytic ? 0 : plan.shots * plan.runs;
    return rec;
  }

  StateVector rotated = state;
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd had;
  had << r, r, r, -r;
  Eigen::Matrix2cd y_to_z;  // H S^dagger
  y_to_z << r, -kI * r, r, kI * r;
  for (const auto& [site, p] : obs.ops()) {
    if (p == Pauli::X) rotated.apply_single_qubit(site, had);
    if (p == Pauli::Y) rotated.apply_single_qubit(site, y_to_z);
  }
  std::uint64_t support = 0;
  for (int s : obs.support()) support |= std::uint64_t{1} << s;

  const auto amps = rotated.amplitudes();
  std::vector<double> probs(amps.size());
  double exact = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) {
    probs[b] = std::norm(amps[b]);
    exact += ((std::popcount(b & support) & 1) ? -1.0 : 1.0) * probs[b];
  }
  if (plan.analytic) {
    rec.value = sign * exact;
    return rec;
  }

  std::discrete_distribution<std::size_t> outcome(probs.begin(), probs.end());
  std::int64_t sum = 0;
  for (int run = 0; run < plan.runs; ++run) {
    std::mt19937_64 rng(derive_seed(plan.seed, run_stream(id, run)));
    for (std::int64_t s = 0; s < plan.shots; ++s) {
      const std::size_t b = outcome(rng);
      sum += (std::popcount(b & support) & 1) ? -1 : 1;
    }
  }
  const std::int64_t total = plan.shots * plan.runs;
  const double mean = static_cast<double>(sum) / static_cast<double>(total);
  rec.value = sign * mean;
  rec.shots_used = total;
  rec.std_error = std::sqrt(std::max(0.0, 1.0 - mean * mean) / static_cast<double>(total));
  return rec;
}

EstimateRecord measure_energy(const StateVector& state, const WeightedPauliSum& h, const ShotPlan& plan,
                              const std::string& circuit_prefix) {
  if (!h.is_hermitian()) throw_invalid("energy measurement requires a hermitian operator");
  EstimateRecord out;
  out.circuit_id = circuit_prefix;
  double var = 0.0;
  const auto terms = h.terms();
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const double c = terms[j].coefficient.real();
    const auto rec =
        sample_pauli_expectation(state, terms[j].string, plan, circuit_prefix + "/term=" + std::to_string(j));
    out.value += c * rec.value;
    var += c * c * rec.std_error * rec.std_error;
    out.shots_used += rec.shots_used;
  }
  out.std_error = std::sqrt(var);
  return out;
}

std::string estimates_csv(std::span<const EstimateRecord> records) {
  std::string out = "circuit_id,basis,shots,value,std_error\n";
  char buf[128];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, ",%c,%lld,%.17g,%.17g\n", basis_char(r.basis),
                  static_cast<long long>(r.shots_used), r.value, r.std_error);
    out += r.circuit_id;
    out += buf;
  }
  return out;
}

}  // namespace isingtopo
