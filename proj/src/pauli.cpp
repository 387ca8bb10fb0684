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

#include "isingtopo/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace isingtopo {
namespace {

// i^k for integer k.
cplx ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

cplx normalize_phase(cplx phase) {
  const double a = std::abs(phase);
  if (!(a > 0.0) || !std::isfinite(a)) throw_invalid("Pauli phase must be a finite nonzero scalar");
  if (a == 1.0) return phase;
  return phase / a;
}

void check_register(int n) {
  if (n < 0 || n > 64) throw_invalid("Pauli strings support 0..64 qubits, got " + std::to_string(n));
}

}  // namespace

char pauli_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: throw_invalid(std::string("unknown Pauli symbol '") + c + "'");
  }
}

PauliString::PauliString(int num_qubits) : n_(num_qubits) { check_register(num_qubits); }

PauliString::PauliString(int num_qubits,
                         std::initializer_list<std::pair<int, Pauli>> ops,
                         cplx phase)
    : PauliString(num_qubits, std::vector<std::pair<int, Pauli>>(ops), phase) {}

PauliString::PauliString(int num_qubits,
                         const std::vector<std::pair<int, Pauli>>& ops,
                         cplx phase)
    : n_(num_qubits), phase_(normalize_phase(phase)) {
  check_register(num_qubits);
  for (const auto& [site, p] : ops) {
    if (site < 0 || site >= n_) {
      throw_range("Pauli site " + std::to_string(site) + " outside register of " + std::to_string(n_));
    }
    const std::uint64_t bit = std::uint64_t{1} << site;
    if ((x_ | z_) & bit) throw_invalid("duplicate site " + std::to_string(site) + " in Pauli string");
    if (p == Pauli::X || p == Pauli::Y) x_ |= bit;
    if (p == Pauli::Z || p == Pauli::Y) z_ |= bit;
  }
}

PauliString PauliString::from_masks(int num_qubits, std::uint64_t x, std::uint64_t z, cplx phase) {
  PauliString s(num_qubits);
  const std::uint64_t allowed = num_qubits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << num_qubits) - 1);
  if ((x | z) & ~allowed) throw_range("Pauli mask exceeds register size");
  s.x_ = x;
  s.z_ = z;
  s.phase_ = normalize_phase(phase);
  return s;
}

Pauli PauliString::at(int site) const {
  if (site < 0 || site >= n_) throw_range("Pauli site out of range");
  const bool x = (x_ >> site) & 1U;
  const bool z = (z_ >> site) & 1U;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

std::vector<std::pair<int, Pauli>> PauliString::ops() const {
  std::vector<std::pair<int, Pauli>> out;
  for (std::uint64_t m = x_ | z_; m != 0; m &= m - 1) {
    const int site = std::countr_zero(m);
    out.emplace_back(site, at(site));
  }
  return out;
}

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (std::uint64_t m = x_ | z_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }
int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

bool PauliString::is_hermitian(double tol) const { return std::abs(phase_.imag()) <= tol; }

bool PauliString::commutes_with(const PauliString& other) const {
  return ((std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_)) & 1) == 0;
}

PauliString PauliString::adjoint() const { return with_phase(std::conj(phase_)); }

PauliString PauliString::with_phase(cplx phase) const {
  PauliString s = *this;
  s.phase_ = normalize_phase(phase);
  return s;
}

cplx PauliString::symplectic_phase() const { return phase_ * ipow(y_count()); }

std::string PauliString::to_string() const {
  std::ostringstream os;
  if (phase_ != cplx(1.0, 0.0)) os << "(" << phase_.real() << "," << phase_.imag() << ")";
  if (is_identity()) {
    os << "I";
    return os.str();
  }
  bool first = true;
  for (const auto& [site, p] : ops()) {
    if (!first) os << ' ';
    os << pauli_char(p) << site;
    first = false;
  }
  return os.str();
}

Eigen::MatrixXcd PauliString::to_dense() const {
  if (n_ > kMaxDenseQubits) throw_range("dense conversion limited to " + std::to_string(kMaxDenseQubits) + " qubits");
  const Eigen::Index dim = Eigen::Index{1} << n_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const cplx front = symplectic_phase();
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const double sign = (std::popcount(ub & z_) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(ub ^ x_), b) = front * sign;
  }
  return m;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) throw_invalid("Pauli product of strings on different register sizes");
  PauliString c(a.n_);
  c.x_ = a.x_ ^ b.x_;
  c.z_ = a.z_ ^ b.z_;
  // X^xa Z^za X^xb Z^zb = (-1)^{|za & xb|} X^{xa^xb} Z^{za^zb}
  const int swaps = std::popcount(a.z_ & b.x_);
  const int k = a.y_count() + b.y_count() - c.y_count() + 2 * swaps;
  c.phase_ = a.phase_ * b.phase_ * ipow(k);
  return c;
}

// ---------------------------------------------------------------------------

WeightedPauliSum::WeightedPauliSum(int num_qubits) : n_(num_qubits) { check_register(num_qubits); }

void WeightedPauliSum::add(cplx coefficient, const PauliString& s) {
  if (s.num_qubits() != n_) throw_invalid("term register size does not match sum");
  const cplx c = coefficient * s.phase();
  if (c == cplx(0.0, 0.0)) return;
  auto [it, inserted] = terms_.try_emplace(Key{s.x_mask(), s.z_mask()}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx(0.0, 0.0)) terms_.erase(it);
  }
}

std::vector<PauliTerm> WeightedPauliSum::terms() const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) {
    out.push_back({c, PauliString::from_masks(n_, key.first, key.second)});
  }
  return out;
}

cplx WeightedPauliSum::coefficient_of(const PauliString& s) const {
  auto it = terms_.find(Key{s.x_mask(), s.z_mask()});
  return it == terms_.end() ? cplx(0.0, 0.0) : it->second / s.phase();
}

WeightedPauliSum& WeightedPauliSum::operator+=(const WeightedPauliSum& other) {
  if (other.n_ != n_) throw_invalid("register size mismatch in Pauli sum");
  for (const auto& [key, c] : other.terms_) add(c, PauliString::from_masks(n_, key.first, key.second));
  return *this;
}

WeightedPauliSum& WeightedPauliSum::operator-=(const WeightedPauliSum& other) {
  if (other.n_ != n_) throw_invalid("register size mismatch in Pauli sum");
  for (const auto& [key, c] : other.terms_) add(-c, PauliString::from_masks(n_, key.first, key.second));
  return *this;
}

WeightedPauliSum& WeightedPauliSum::operator*=(cplx scalar) {
  if (scalar == cplx(0.0, 0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= scalar;
  return *this;
}

WeightedPauliSum WeightedPauliSum::adjoint() const {
  // Strings in canonical form (phase 1) are hermitian.
  WeightedPauliSum out = *this;
  for (auto& [key, c] : out.terms_) c = std::conj(c);
  return out;
}

bool WeightedPauliSum::is_hermitian(double tol) const {
  for (const auto& [key, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

double WeightedPauliSum::l1_norm() const {
  double total = 0.0;
  for (const auto& [key, c] : terms_) total += std::abs(c);
  return total;
}

WeightedPauliSum WeightedPauliSum::pruned(double tol) const {
  WeightedPauliSum out(n_);
  for (const auto& [key, c] : terms_) {
    if (std::abs(c) > tol) out.terms_.emplace(key, c);
  }
  return out;
}

Eigen::MatrixXcd WeightedPauliSum::to_dense() const {
  if (n_ > kMaxDenseQubits) throw_range("dense conversion limited to " + std::to_string(kMaxDenseQubits) + " qubits");
  const Eigen::Index dim = Eigen::Index{1} << n_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms()) m += t.coefficient * t.string.to_dense();
  return m;
}

std::string WeightedPauliSum::serialize() const {
  std::string out = "# n_qubits=" + std::to_string(n_) + "\n";
  char buf[64];
  for (const auto& t : terms()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g", t.coefficient.real(), t.coefficient.imag());
    out += buf;
    for (const auto& [site, p] : t.string.ops()) {
      out += ' ';
      out += std::to_string(site);
      out += ':';
      out += pauli_char(p);
    }
    out += '\n';
  }
  return out;
}

WeightedPauliSum WeightedPauliSum::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  std::vector<std::pair<cplx, std::vector<std::pair<int, Pauli>>>> rows;
  int max_site = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("n_qubits=");
      if (pos != std::string::npos) n = std::stoi(line.substr(pos + 9));
      continue;
    }
    std::istringstream ls(line);
    double re = 0.0;
    double im = 0.0;
    if (!(ls >> re >> im)) throw_invalid("malformed Pauli term line: " + line);
    std::vector<std::pair<int, Pauli>> ops;
    std::string tok;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon + 2 != tok.size()) throw_invalid("malformed Pauli factor '" + tok + "'");
      const int site = std::stoi(tok.substr(0, colon));
      ops.emplace_back(site, pauli_from_char(tok[colon + 1]));
      max_site = std::max(max_site, site);
    }
    rows.emplace_back(cplx(re, im), std::move(ops));
  }
  if (n < 0) n = max_site + 1;
  WeightedPauliSum out(n);
  for (const auto& [c, ops] : rows) out.add(c, PauliString(n, ops));
  return out;
}

WeightedPauliSum operator*(const WeightedPauliSum& a, const WeightedPauliSum& b) {
  if (a.n_ != b.n_) throw_invalid("register size mismatch in Pauli sum product");
  WeightedPauliSum out(a.n_);
  for (const auto& [ka, ca] : a.terms_) {
    const auto sa = PauliString::from_masks(a.n_, ka.first, ka.second);
    for (const auto& [kb, cb] : b.terms_) {
      out.add(ca * cb, sa * PauliString::from_masks(a.n_, kb.first, kb.second));
    }
  }
  return out;
}

WeightedPauliSum operator+(WeightedPauliSum a, const WeightedPauliSum& b) { return a += b; }
WeightedPauliSum operator-(WeightedPauliSum a, const WeightedPauliSum& b) { return a -= b; }
WeightedPauliSum operator*(cplx scalar, WeightedPauliSum a) { return a *= scalar; }

WeightedPauliSum commutator(const WeightedPauliSum& a, const WeightedPauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) throw_invalid("register size mismatch in commutator");
  WeightedPauliSum out(a.num_qubits());
  const auto ta = a.terms();
  const auto tb = b.terms();
  // Commuting string pairs cancel; anticommuting pairs contribute 2 s_a s_b.
  for (const auto& x : ta) {
    for (const auto& y : tb) {
      if (x.string.commutes_with(y.string)) continue;
      out.add(2.0 * x.coefficient * y.coefficient, x.string * y.string);
    }
  }
  return out;
}

double commutator_norm(const WeightedPauliSum& a, const WeightedPauliSum& b) {
  return commutator(a, b).l1_norm();
}

}  // namespace isingtopo
