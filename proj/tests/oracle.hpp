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

// Dense reference implementations used only by the tests. Nothing here calls
// the library's symbolic or statevector kernels.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char c) {
  Mat m(2, 2);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = Mat::Identity(2, 2); break;
  }
  return m;
}

// ops[k] acts on qubit k; qubit 0 is the least significant bit, so it is the
// rightmost Kronecker factor.
inline Mat kron_string(const std::string& ops) {
  Mat out = Mat::Identity(1, 1);
  for (char c : ops) {
    Mat next = Eigen::kroneckerProduct(pauli(c), out).eval();
    out = next;
  }
  return out;
}

// Single operator string on n qubits with the given (site, char) factors.
inline Mat op(int n, std::initializer_list<std::pair<int, char>> factors) {
  std::string s(n, 'I');
  for (auto [site, c] : factors) s[site] = c;
  return kron_string(s);
}

// Transverse-field Ising chain with the impurity, written out term by term.
// Sites are 1-based as in the model definition.
inline Mat hamiltonian(int L, int b, double v, int j) {
  const int dim = 1 << L;
  Mat h = Mat::Zero(dim, dim);
  auto s = [](int site) { return site - 1; };
  for (int i = 1; i < L; ++i) h -= op(L, {{s(i), 'Z'}, {s(i + 1), 'Z'}});
  for (int i = 1; i <= L; ++i) h -= op(L, {{s(i), 'X'}});
  if (b != 0 && L >= 2) h -= double(b) * op(L, {{s(L), 'Z'}, {s(1), 'Z'}});
  double c1 = 0.0, c2 = 0.0;
  if (std::isinf(v)) {
    c1 = 1.0;
    c2 = v > 0 ? 1.0 : -1.0;
  } else {
    c1 = 1.0 - 1.0 / std::cosh(2.0 * v);
    c2 = std::tanh(2.0 * v);
  }
  if (v != 0.0) {
    const int jp = j % L + 1;
    h += c1 * (op(L, {{s(j), 'Z'}, {s(jp), 'Z'}}) + op(L, {{s(j), 'X'}}));
    h += c2 * op(L, {{s(j), 'Y'}, {s(jp), 'Z'}});
  }
  return h;
}

inline Mat expm_rotation(const Mat& generator, double angle) {
  const Mat a = cplx(0, -angle) * generator;
  return a.exp();
}

inline Vec plus_state(int n) {
  const int dim = 1 << n;
  return Vec::Constant(dim, cplx(std::pow(2.0, -0.5 * n), 0.0));
}

// Generators of the layered ansatz in gate order: every bond ZZ, then every
// site X, then every site Z, repeated per layer.
inline std::vector<Mat> ansatz_generators(int L, int layers, bool periodic) {
  std::vector<Mat> out;
  for (int n = 0; n < layers; ++n) {
    const int bonds = periodic ? L : L - 1;
    for (int i = 0; i < bonds; ++i) out.push_back(op(L, {{i, 'Z'}, {(i + 1) % L, 'Z'}}));
    for (int i = 0; i < L; ++i) out.push_back(op(L, {{i, 'X'}}));
    for (int i = 0; i < L; ++i) out.push_back(op(L, {{i, 'Z'}}));
  }
  return out;
}

inline Vec ansatz_state(int L, int layers, bool periodic, const std::vector<double>& params) {
  const auto gens = ansatz_generators(L, layers, periodic);
  Vec psi = plus_state(L);
  for (std::size_t k = 0; k < gens.size(); ++k) psi = expm_rotation(gens[k], params[k]) * psi;
  return psi;
}

inline double ground_energy(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  return es.eigenvalues()(0);
}

// Open chain at v = 0 maps to free fermions: the ground energy is minus the
// sum of the singular values of the L x L bidiagonal matrix with unit
// transverse field and unit bonds.
inline double free_fermion_open_energy(int L) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(L, L);
  for (int i = 0; i < L; ++i) {
    m(i, i) = 1.0;
    if (i + 1 < L) m(i, i + 1) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return -svd.singularValues().sum();
}

inline Vec to_vec(std::span<const cplx> amps) {
  Vec out(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) out(static_cast<Eigen::Index>(k)) = amps[k];
  return out;
}

}  // namespace oracle
