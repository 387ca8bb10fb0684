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

// Symbolic Pauli strings and weighted sums of them.
//
// A string is stored in symplectic form: bit k of x_mask/z_mask marks an X/Z
// factor on site k, and a site with both bits set carries Y. Sites are
// 0-based, at most 64 per string. Acting on a computational basis state,
//
//   P |b> = phase * i^{#Y} * (-1)^{popcount(b & z)} |b ^ x>,
//
// which is the convention used by every kernel in this library.

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isingtopo/error.hpp"

namespace isingtopo {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// Dense conversion guard; dense matrices are an oracle facility only.
inline constexpr int kMaxDenseQubits = 12;

class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int num_qubits);
  PauliString(int num_qubits,
              std::initializer_list<std::pair<int, Pauli>> ops,
              cplx phase = 1.0);
  PauliString(int num_qubits, const std::vector<std::pair<int, Pauli>>& ops,
              cplx phase = 1.0);

  static PauliString from_masks(int num_qubits, std::uint64_t x,
                                std::uint64_t z, cplx phase = 1.0);
  static PauliString single(int num_qubits, int site, Pauli p) {
    return PauliString(num_qubits, {{site, p}});
  }

  int num_qubits() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  cplx phase() const noexcept { return phase_; }

  Pauli at(int site) const;
  // Non-identity factors in ascending site order.
  std::vector<std::pair<int, Pauli>> ops() const;
  std::vector<int> support() const;
  int weight() const noexcept;
  int y_count() const noexcept;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }

  // Hermitian iff the phase is +-1.
  bool is_hermitian(double tol = 1e-12) const;
  bool commutes_with(const PauliString& other) const;
  bool same_ops(const PauliString& other) const noexcept {
    return x_ == other.x_ && z_ == other.z_;
  }

  PauliString adjoint() const;
  PauliString with_phase(cplx phase) const;

  // phase * i^{#Y}: the scalar in front of X^x Z^z.
  cplx symplectic_phase() const;

  std::string to_string() const;
  Eigen::MatrixXcd to_dense() const;

  friend PauliString operator*(const PauliString& a, const PauliString& b);
  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.same_ops(b) && a.phase_ == b.phase_;
  }

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  cplx phase_ = 1.0;
};

struct PauliTerm {
  cplx coefficient;
  PauliString string;  // phase folded into coefficient; string phase is 1
};

// Sum of Pauli strings with complex weights, kept in canonical merged form:
// one entry per distinct string, ordered by (x_mask, z_mask).
class WeightedPauliSum {
 public:
  WeightedPauliSum() = default;
  explicit WeightedPauliSum(int num_qubits);

  int num_qubits() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  void add(cplx coefficient, const PauliString& s);
  std::vector<PauliTerm> terms() const;
  cplx coefficient_of(const PauliString& s) const;

  WeightedPauliSum& operator+=(const WeightedPauliSum& other);
  WeightedPauliSum& operator-=(const WeightedPauliSum& other);
  WeightedPauliSum& operator*=(cplx scalar);

  WeightedPauliSum adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  // Sum of |coefficient| over the merged terms.
  double l1_norm() const;
  WeightedPauliSum pruned(double tol) const;

  Eigen::MatrixXcd to_dense() const;

  // One term per line: "coeff_re coeff_im site:P site:P ...", preceded by a
  // "# n_qubits=<n>" header line.
  std::string serialize() const;
  static WeightedPauliSum parse(std::string_view text);

  friend WeightedPauliSum operator*(const WeightedPauliSum& a,
                                    const WeightedPauliSum& b);

 private:
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  int n_ = 0;
  std::map<Key, cplx> terms_;
};

WeightedPauliSum operator+(WeightedPauliSum a, const WeightedPauliSum& b);
WeightedPauliSum operator-(WeightedPauliSum a, const WeightedPauliSum& b);
WeightedPauliSum operator*(cplx scalar, WeightedPauliSum a);

inline WeightedPauliSum to_sum(const PauliString& s, cplx coefficient = 1.0) {
  WeightedPauliSum out(s.num_qubits());
  out.add(coefficient, s);
  return out;
}

// ab - ba in merged form.
WeightedPauliSum commutator(const WeightedPauliSum& a,
                            const WeightedPauliSum& b);
// l1 norm of the commutator; zero iff the operators commute.
double commutator_norm(const WeightedPauliSum& a, const WeightedPauliSum& b);

}  // namespace isingtopo
