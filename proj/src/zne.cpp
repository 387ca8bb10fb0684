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

#include "isingtopo/zne.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "isingtopo/rng.hpp"

namespace isingtopo {
namespace {

constexpr Pauli kPaulis[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

struct ErrorEvent {
  std::size_t after_gate;
  PauliString pauli;
};

}  // namespace

void validate_noise(const NoiseModel& noise) {
  if (!(noise.p2 >= 0.0 && noise.p2 < 1.0)) throw_invalid("p2 must lie in [0, 1)");
  if (!(noise.p1 >= 0.0 && noise.p1 < 1.0)) throw_invalid("p1 must lie in [0, 1)");
}

std::vector<double> default_zne_factors() {
  std::vector<double> f;
  for (int i = 0; i <= 10; ++i) f.push_back((5.0 + i) / 5.0);
  return f;
}

void validate_schedule(const ZneSchedule& schedule) {
  if (schedule.factors.empty() || schedule.factors.front() != 1.0) throw_invalid("ZNE factors must start at 1.0");
  for (std::size_t k = 1; k < schedule.factors.size(); ++k) {
    if (!(schedule.factors[k] > schedule.factors[k - 1])) throw_invalid("ZNE factors must be strictly increasing");
  }
  if (schedule.degree < 0) throw_invalid("extrapolation degree must be non-negative");
  if (schedule.factors.size() < static_cast<std::size_t>(schedule.degree) + 1) {
    throw_invalid("extrapolation of degree " + std::to_string(schedule.degree) + " needs at least " +
                  std::to_string(schedule.degree + 1) + " factors");
  }
}

int two_qubit_gate_count(std::span<const RotationGate> circuit) {
  return static_cast<int>(std::count_if(circuit.begin(), circuit.end(), [](const auto& g) { return g.is_two_qubit(); }));
}

int folds_for_factor(int two_qubit_gates, double factor) {
  if (!(factor >= 1.0)) throw_invalid("noise factor must be >= 1");
  const double exact = (factor - 1.0) * two_qubit_gates / 2.0;
  const int k = static_cast<int>(std::floor(exact + 0.5 + 1e-9));
  return std::clamp(k, 0, two_qubit_gates);
}

std::vector<RotationGate> fold_gates(std::span<const RotationGate> circuit, double factor) {
  const int n2 = two_qubit_gate_count(circuit);
  int remaining = folds_for_factor(n2, factor);
  // Mark the trailing `remaining` two-qubit gates.
  std::vector<bool> fold(circuit.size(), false);
  for (std::size_t k = circuit.size(); k-- > 0 && remaining > 0;) {
    if (circuit[k].is_two_qubit()) {
      fold[k] = true;
      --remaining;
    }
  }
  std::vector<RotationGate> out;
  out.reserve(circuit.size() + 2 * static_cast<std::size_t>(n2));
  for (std::size_t k = 0; k < circuit.size(); ++k) {
    out.push_back(circuit[k]);
    if (fold[k]) {
      out.push_back(circuit[k].inverse());
      out.push_back(circuit[k]);
    }
  }
  return out;
}

EstimateRecord noisy_expectation(const StateVector& initial, std::span<const RotationGate> circuit,
                                 const WeightedPauliSum& obs, const NoiseModel& noise, int trajectories,
                                 std::uint64_t seed, const std::string& stream_id) {
  validate_noise(noise);
  if (trajectories < 1) throw_invalid("trajectories must be >= 1");
  const int n = initial.num_qubits();

  StateVector clean = initial;
  apply_circuit(clean, circuit);
  const double clean_value = expectation(clean, obs);

  std::mt19937_64 rng(derive_seed(seed, stream_id));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick15(1, 15);
  std::uniform_int_distribution<int> pick3(1, 3);

  // Deviations from the clean value keep the variance well conditioned.
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<ErrorEvent> events;
  for (int t = 0; t < trajectories; ++t) {
    events.clear();
    for (std::size_t k = 0; k < circuit.size(); ++k) {
      const auto& g = circuit[k];
      const auto sites = g.generator.support();
      if (sites.size() == 2 && noise.p2 > 0.0 && coin(rng) < noise.p2) {
        const int idx = pick15(rng);
        std::vector<std::pair<int, Pauli>> ops;
        if (idx % 4) ops.emplace_back(sites[0], kPaulis[idx % 4]);
        if (idx / 4) ops.emplace_back(sites[1], kPaulis[idx / 4]);
        events.push_back({k, PauliString(n, ops)});
      } else if (sites.size() == 1 && noise.p1 > 0.0 && coin(rng) < noise.p1) {
        events.push_back({k, PauliString::single(n, sites[0], kPaulis[pick3(rng)])});
      }
    }
    double value = clean_value;
    if (!events.empty()) {
      StateVector s = initial;
      std::size_t next = 0;
      for (std::size_t k = 0; k < circuit.size(); ++k) {
        apply_rotation(s, circuit[k]);
        while (next < events.size() && events[next].after_gate == k) s.apply_pauli(events[next++].pauli);
      }
      value = expectation(s, obs);
    }
    const double d = value - clean_value;
    sum += d;
    sum_sq += d * d;
  }
  EstimateRecord rec;
  rec.circuit_id = stream_id;
  rec.shots_used = trajectories;
  const double mean_d = sum / trajectories;
  rec.value = clean_value + mean_d;
  const double var =
      trajectories > 1 ? std::max(0.0, (sum_sq - trajectories * mean_d * mean_d) / (trajectories - 1)) : 0.0;
  rec.std_error = std::sqrt(var / trajectories);
  return rec;
}

double extrapolate(const ZneSchedule& schedule, std::span<const double> factors, std::span<const double> values) {
  if (factors.size() != values.size()) throw_invalid("factor and value counts differ");
  const std::set<double> distinct(factors.begin(), factors.end());
  const int cols = schedule.degree + 1;
  if (schedule.degree < 0 || static_cast<int>(distinct.size()) < cols) {
    throw_invalid("extrapolation needs at least degree + 1 distinct factors");
  }
  const auto m = static_cast<Eigen::Index>(factors.size());
  Eigen::MatrixXd vander(m, cols);
  Eigen::VectorXd y(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    double pw = 1.0;
    for (int c = 0; c < cols; ++c) {
      vander(r, c) = pw;
      pw *= factors[static_cast<std::size_t>(r)];
    }
    y(r) = values[static_cast<std::size_t>(r)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
  if (qr.rank() < cols) throw_numerical("rank-deficient extrapolation fit");
  const Eigen::VectorXd coef = qr.solve(y);
  return coef(0);
}

ZneReport run_zne(const StateVector& initial, std::span<const RotationGate> circuit, const WeightedPauliSum& obs,
                  const NoiseModel& noise, const ZneSchedule& schedule, int trajectories, std::uint64_t seed) {
  validate_schedule(schedule);
  ZneReport report;
  report.factors = schedule.factors;
  StateVector clean = initial;
  apply_circuit(clean, circuit);
  report.noiseless_reference = expectation(clean, obs);

  std::vector<double> values;
  for (std::size_t i = 0; i < schedule.factors.size(); ++i) {
    const auto folded = fold_gates(circuit, schedule.factors[i]);
    auto rec = noisy_expectation(initial, folded, obs, noise, trajectories, seed, "zne/factor=" + std::to_string(i));
    values.push_back(rec.value);
    report.estimates.push_back(std::move(rec));
  }
  report.extrapolated = extrapolate(schedule, report.factors, values);
  return report;
}

}  // namespace isingtopo
