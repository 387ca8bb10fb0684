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

#include "isingtopo/model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace isingtopo {
namespace {

constexpr double kDegenerateGap = 1e-10;
constexpr int kMaxKrylov = 400;

void fix_global_phase(StateVector& s) {
  const auto amps = s.amplitudes();
  double best = -1.0;
  for (const cplx& a : amps) best = std::max(best, std::abs(a));
  for (const cplx& a : amps) {
    if (std::abs(a) >= best - 1e-12) {
      s.scale(std::conj(a) / std::abs(a));
      return;
    }
  }
}

double residual_norm(const WeightedPauliSum& h, const StateVector& psi, double e) {
  StateVector r = apply_sum(h, psi);
  r.axpy(-e, psi);
  return r.norm();
}

void orthogonalize(StateVector& w, std::span<const StateVector> basis) {
  // Two passes of classical Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) w.axpy(-inner(q, w), q);
  }
}

struct LanczosOutcome {
  double value;
  StateVector vector;
};

// Lowest eigenpair of h restricted to the orthogonal complement of `deflate`.
// Full reorthogonalization; the start vector comes from a fixed seed so the
// result is reproducible.
LanczosOutcome lanczos_lowest(const WeightedPauliSum& h, std::span<const StateVector> deflate) {
  const int n = h.num_qubits();
  const auto dim = std::size_t{1} << n;
  const int max_steps = static_cast<int>(std::min<std::size_t>(dim - deflate.size(), kMaxKrylov));

  std::mt19937_64 rng(0x1a2b3c4d5e6fULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  StateVector v0(n);
  for (cplx& a : v0.amplitudes()) a = cplx(u(rng), u(rng));
  orthogonalize(v0, deflate);
  v0.normalize();

  std::vector<StateVector> basis{v0};
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXd ritz;
  double theta = 0.0;

  auto solve_tridiagonal = [&](int m) {
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(std::max(m - 1, 0));
    for (int k = 0; k + 1 < m; ++k) e(k) = beta[static_cast<std::size_t>(k)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    theta = es.eigenvalues()(0);
    ritz = es.eigenvectors().col(0);
  };

  for (int k = 0; k < max_steps; ++k) {
    StateVector w = apply_sum(h, basis.back());
    const double a = inner(basis.back(), w).real();
    alpha.push_back(a);
    orthogonalize(w, basis);
    orthogonalize(w, deflate);
    const double bnorm = w.norm();
    const int m = k + 1;
    const bool last = (m == max_steps) || bnorm < 1e-13;
    if (last || m % 5 == 0) {
      solve_tridiagonal(m);
      const double res = bnorm * std::abs(ritz(m - 1));
      if (last || res < 1e-13 * std::max(1.0, std::abs(theta))) break;
    }
    beta.push_back(bnorm);
    w.scale(1.0 / bnorm);
    basis.push_back(std::move(w));
  }

  StateVector psi(n);
  psi.scale(0.0);
  for (Eigen::Index k = 0; k < ritz.size(); ++k) psi.axpy(ritz(k), basis[static_cast<std::size_t>(k)]);
  orthogonalize(psi, deflate);
  psi.normalize();
  return {theta, std::move(psi)};
}

}  // namespace

ModelParams centred_params(int L, int b, double v) {
  ModelParams p;
  p.L = L;
  p.b = b;
  p.v = v;
  p.j = std::max(1, L / 2);
  return p;
}

DefectCoefficients defect_coefficients(double v) {
  if (std::isnan(v)) throw_invalid("impurity strength v is NaN");
  if (std::isinf(v)) return {1.0, v > 0 ? 1.0 : -1.0};
  // 2 sinh^2(v) / cosh(2v) = 1 - sech(2v), stable for large |v|.
  return {1.0 - 1.0 / std::cosh(2.0 * v), std::tanh(2.0 * v)};
}

double screening_length(double v) { return std::exp(4.0 * v); }

void validate_params(const ModelParams& p) {
  if (p.L < 1 || p.L > 64) throw_invalid("chain length L must be in 1..64, got " + std::to_string(p.L));
  if (p.b != 0 && p.b != 1) throw_invalid("boundary coupling b must be 0 or 1, got " + std::to_string(p.b));
  if (std::isnan(p.v)) throw_invalid("impurity strength v is NaN");
  if (p.L == 1) {
    if (p.v != 0.0) throw_invalid("a single-site chain cannot carry a defect (v must be 0)");
    return;
  }
  const int j_max = p.b == 1 ? p.L : p.L - 1;
  if (p.j < 1 || p.j > j_max) {
    throw_invalid("defect site j must be in 1.." + std::to_string(j_max) + ", got " + std::to_string(p.j));
  }
}

WeightedPauliSum build_hamiltonian(const ModelParams& p) {
  validate_params(p);
  const int L = p.L;
  WeightedPauliSum h(L);
  for (int i = 0; i + 1 < L; ++i) h.add(-1.0, PauliString(L, {{i, Pauli::Z}, {i + 1, Pauli::Z}}));
  for (int i = 0; i < L; ++i) h.add(-1.0, PauliString::single(L, i, Pauli::X));
  if (p.b == 1) {
    if (L == 1) {
      h.add(-1.0, PauliString(L));
    } else {
      h.add(-1.0, PauliString(L, {{L - 1, Pauli::Z}, {0, Pauli::Z}}));
    }
  }
  if (L >= 2) {
    const auto c = defect_coefficients(p.v);
    const int s0 = p.j - 1;
    const int s1 = p.j % L;
    h.add(c.bond_and_field, PauliString(L, {{s0, Pauli::Z}, {s1, Pauli::Z}}));
    h.add(c.bond_and_field, PauliString::single(L, s0, Pauli::X));
    h.add(c.yz, PauliString(L, {{s0, Pauli::Y}, {s1, Pauli::Z}}));
  }
  return h;
}

SpectrumResult lowest_eigenpair(const WeightedPauliSum& h, EigenSolver solver) {
  if (!h.is_hermitian()) throw_invalid("eigensolver requires a hermitian operator");
  const int n = h.num_qubits();
  if (n < 1 || n > kMaxOracleQubits) {
    throw_range("oracle range exceeded: exact diagonalization supports 1.." + std::to_string(kMaxOracleQubits) +
                " qubits, got " + std::to_string(n));
  }
  if (solver == EigenSolver::kAuto) solver = n <= kMaxDenseSolverQubits ? EigenSolver::kDense : EigenSolver::kLanczos;
  if (solver == EigenSolver::kDense && n > kMaxDenseQubits) throw_range("dense solver limited to 12 qubits");

  SpectrumResult out;
  out.solver = solver;
  if (solver == EigenSolver::kDense || n == 1) {
    out.solver = EigenSolver::kDense;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense());
    if (es.info() != Eigen::Success) throw_numerical("dense eigensolver failed");
    out.ground_energy = es.eigenvalues()(0);
    out.gap = es.eigenvalues().size() > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0) : 0.0;
    std::vector<cplx> amps(es.eigenvectors().col(0).data(),
                           es.eigenvectors().col(0).data() + es.eigenvectors().rows());
    out.ground_state = StateVector::from_amplitudes(n, std::move(amps));
  } else {
    auto ground = lanczos_lowest(h, {});
    const StateVector deflate[] = {ground.vector};
    auto excited = lanczos_lowest(h, deflate);
    out.ground_energy = ground.value;
    out.gap = std::max(0.0, excited.value - ground.value);
    out.ground_state = std::move(ground.vector);
  }
  out.ground_state.normalize();
  fix_global_phase(out.ground_state);
  out.degenerate = out.gap < kDegenerateGap;
  out.residual = residual_norm(h, out.ground_state, out.ground_energy);
  return out;
}

SpectrumResult exact_ground(const ModelParams& p, EigenSolver solver) {
  validate_params(p);
  if (p.L > kMaxOracleQubits) {
    throw_range("oracle range exceeded: L=" + std::to_string(p.L) + " > " + std::to_string(kMaxOracleQubits));
  }
  return lowest_eigenpair(build_hamiltonian(p), solver);
}

std::vector<ScanRow> energy_scan(int L, int b, std::span<const double> v_list, int j) {
  std::vector<ScanRow> rows;
  rows.reserve(v_list.size());
  for (double v : v_list) {
    if (!std::isfinite(v)) throw_invalid("energy scan requires finite v values");
    ModelParams p{L, b, v, j};
    const auto spec = exact_ground(p);
    rows.push_back({v, L / screening_length(v), spec.ground_energy, spec.gap});
  }
  return rows;
}

std::string scan_csv(std::span<const ScanRow> rows) {
  std::string out = "v,L_over_lB,ground_energy,gap\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.v, r.L_over_lB, r.ground_energy, r.gap);
    out += buf;
  }
  return out;
}

}  // namespace isingtopo
