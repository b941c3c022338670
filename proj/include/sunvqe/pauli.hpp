// Copyright 2026 The sunvqe Authors
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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sunvqe/lattice_model.hpp"
#include "sunvqe/sparse_matrix.hpp"

namespace sunvqe {

/// Tensor product of single-qubit Paulis in x/z bitmask form: qubit q carries
/// I (x=0,z=0), X (1,0), Z (0,1) or Y (1,1), with Y = i X Z.
/// Qubit q is bit q of a computational-basis index.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int qubits, std::uint64_t x, std::uint64_t z);

  static PauliString identity(int qubits) { return {qubits, 0, 0}; }
  /// Letters over IXYZ, qubit 0 leftmost.
  static PauliString from_letters(std::string_view letters);
  static PauliString single(int qubits, int q, char letter);

  int qubits() const { return qubits_; }
  std::uint64_t x() const { return x_; }
  std::uint64_t z() const { return z_; }
  char letter(int q) const;
  std::string letters() const;
  bool is_identity() const { return (x_ | z_) == 0; }
  bool is_diagonal() const { return x_ == 0; }
  int weight() const;
  int y_count() const;
  bool commutes_with(const PauliString& other) const;

  /// P|w> = phase(w) |w ^ x()>.
  cplx phase_on(std::uint64_t w) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return a.x_ != b.x_ ? a.x_ <=> b.x_ : a.z_ <=> b.z_;
  }

 private:
  int qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PhasedPauli {
  cplx phase;  // one of +1, -1, +i, -i
  PauliString string;
};

/// Group product a * b. Throws std::invalid_argument on length mismatch.
PhasedPauli multiply(const PauliString& a, const PauliString& b);

struct PauliTerm {
  cplx coeff;
  PauliString string;
};

/// Weighted sum of Pauli strings on a fixed number of qubits. Terms are kept
/// merged (one entry per string) and sorted; coefficients whose modulus falls
/// to `kDropTolerance` or below are removed.
class PauliHamiltonian {
 public:
  static constexpr double kDropTolerance = 1e-12;

  explicit PauliHamiltonian(int qubits = 0) : qubits_(qubits) {}
  PauliHamiltonian(int qubits, const std::vector<PauliTerm>& terms);

  int qubits() const { return qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add(cplx coeff, const PauliString& s);
  PauliHamiltonian& operator+=(const PauliHamiltonian& other);
  PauliHamiltonian& operator*=(cplx scale);
  friend PauliHamiltonian operator+(PauliHamiltonian a, const PauliHamiltonian& b) { return a += b; }
  friend PauliHamiltonian operator*(PauliHamiltonian a, cplx s) { return a *= s; }
  friend PauliHamiltonian operator*(cplx s, PauliHamiltonian a) { return a *= s; }
  /// Operator product.
  friend PauliHamiltonian operator*(const PauliHamiltonian& a, const PauliHamiltonian& b);

  PauliHamiltonian adjoint() const;
  /// Coefficient of the identity string.
  cplx constant() const;
  /// Coefficient of `s`, zero when absent.
  cplx coefficient(const PauliString& s) const;
  /// max |c - conj(c)| over coefficients (each string is Hermitian).
  double hermiticity_defect() const;

 private:
  void normalize();

  int qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/// <psi|P|psi> for one string.
cplx string_expectation(std::span<const cplx> state, const PauliString& p);

/// sum_k c_k <psi|P_k|psi>. Per-term values are combined by pairwise
/// summation. An imaginary residue above 1e-9 raises std::domain_error.
double expectation(std::span<const cplx> state, const PauliHamiltonian& H);

/// H|psi>.
std::vector<cplx> apply(const PauliHamiltonian& H, std::span<const cplx> state);

/// Computational-basis matrix, qubit 0 the least significant bit.
SparseHermitian to_dense(const PauliHamiltonian& H, int qubit_cap = 16);

/// <w_r|H|w_c> for the listed basis words.
DenseMatrix restrict_to_words(const PauliHamiltonian& H, std::span<const std::uint64_t> words);

/// Closed-form Pauli-term census of the mapped Hamiltonian with unit couplings.
struct TermCountReport {
  double lambda_t = 0.0;  // circulant edge count up to the hopping range
  double lambda_v = 0.0;  // same for the interaction range
  std::int64_t xx = 0, yy = 0, xy = 0, yx = 0;
  std::int64_t zz = 0;
  std::int64_t z = 0;
  std::int64_t constant = 1;
  /// NL(4 lambda_t + N(1 + lambda_v) + 1)/2; the identity term is not included.
  std::int64_t total = 0;
};

TermCountReport term_count_report(const HubbardModel& model);

/// One term per line: `coeff_re coeff_im LETTERS`, preceded by `#` header lines.
std::string serialize(const PauliHamiltonian& H);
/// Inverse of serialize. Throws std::invalid_argument with the offending line number.
PauliHamiltonian parse_hamiltonian(std::string_view text);

}  // namespace sunvqe
