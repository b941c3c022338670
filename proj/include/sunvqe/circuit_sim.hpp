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

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sunvqe/lattice_model.hpp"
#include "sunvqe/rng.hpp"
#include "sunvqe/sparse_matrix.hpp"

namespace sunvqe {

/// 2^n complex amplitudes; qubit q is bit q of the basis index.
class Statevector {
 public:
  Statevector() = default;
  /// Computational basis state |word>.
  Statevector(int qubits, std::uint64_t word);
  Statevector(int qubits, std::vector<cplx> amplitudes);

  int qubits() const { return qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }
  const cplx& operator[](std::size_t k) const { return amps_[k]; }
  cplx& operator[](std::size_t k) { return amps_[k]; }
  double norm() const;

 private:
  int qubits_ = 0;
  std::vector<cplx> amps_;
};

enum class GateKind { kX, kRZ, kIswapLike, kCRZ, kHopBasis };

/// Two-qubit gates act on the local index x_{q0} + 2 x_{q1}:
///   ISWAP_LIKE(theta) = exp(-i theta/2 (XX + YY))
///   CRZ(theta)        = diag(1, 1, e^{-i theta}, e^{i theta})   (q1 acts as control)
///   HOP_BASIS(angle)  = rotation diagonalising e^{i angle} c^dag_{q0} c_{q1} + h.c.
///                       into |01><01| - |10><10|; angle = 2 pi phi / L gives U_L(phi).
/// RZ(theta) = diag(e^{-i theta}, e^{i theta}).
struct Gate {
  GateKind kind = GateKind::kX;
  int q0 = 0;
  int q1 = -1;
  int slot = -1;       // trainable parameter slot, -1 for X and HOP_BASIS
  double angle = 0.0;  // fixed angle of HOP_BASIS
};

class Circuit {
 public:
  explicit Circuit(int qubits = 0) : qubits_(qubits) {}

  int qubits() const { return qubits_; }
  int parameter_count() const { return params_; }
  const std::vector<Gate>& gates() const { return gates_; }

  void add_x(int q);
  /// Each trainable gate takes a fresh slot; the slot index is returned.
  int add_rz(int q);
  int add_iswap_like(int q0, int q1);
  int add_crz(int control, int target);
  void add_hop_basis(int q0, int q1, double angle);
  void append(const Circuit& other);

 private:
  void check_qubit(int q) const;
  int qubits_;
  int params_ = 0;
  std::vector<Gate> gates_;
};

/// Gate unitary in its local basis (2x2 for single-qubit kinds, embedded in the top-left block).
Eigen::Matrix4cd gate_matrix(GateKind kind, double theta);

void apply_gate(Statevector& state, const Gate& gate, double theta = 0.0);

/// |psi(theta)> = U(theta) |initial>; throws std::invalid_argument on a
/// parameter-length mismatch.
Statevector run(const Circuit& circuit, std::span<const double> params, std::uint64_t initial);
/// Runs `circuit` on an existing state.
void run_on(Statevector& state, const Circuit& circuit, std::span<const double> params);

/// <psi|H|psi> for |psi> = U(params)|initial> together with its exact
/// gradient, by one forward pass and one reverse (adjoint) sweep. Every
/// trainable gate is exp(-i theta G) with G known, so d/dtheta picks up -iG.
double energy_and_gradient(const Circuit& circuit, std::span<const double> params, std::uint64_t initial,
                           const SparseHermitian& H, std::span<double> gradient);

/// Von Neumann entropy (nats) of `subset`, from the Gram matrix of the
/// reshaped amplitude array (the smaller side is always diagonalised).
double reduced_entropy(const Statevector& state, std::span<const int> subset);

/// First floor(n/2) qubits.
std::vector<int> half_chain(int qubits);

/// `shots` draws of the measured qubits; bit k of an outcome is qubit measured[k].
std::map<std::uint64_t, std::int64_t> sample_counts(const Statevector& state, std::span<const int> measured,
                                                    std::int64_t shots, std::uint64_t seed);

}  // namespace sunvqe
