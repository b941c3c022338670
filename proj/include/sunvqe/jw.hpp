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

#include "sunvqe/lattice_model.hpp"
#include "sunvqe/pauli.hpp"

namespace sunvqe {

/// Fermionic mode (site i, colour s) and its qubit n = i + s*L.
struct ModeIndex {
  int i = 0;
  int s = 0;
  int n = 0;
};

int mode_to_qubit(int i, int s, int L, int N);
ModeIndex qubit_to_mode(int n, int L, int N);

/// Colour parity at the ring closure: -1 iff i = L-1 and N_s is odd.
int parity(int i, int s, int L, const SpinSector& sector);

/// Ladder-operator images c_n = prod_{j<n} Z_j |0><1|_n and its adjoint.
PauliHamiltonian annihilation_operator(int n, int qubits);
PauliHamiltonian creation_operator(int n, int qubits);
/// n_n = (1 - Z_n)/2.
PauliHamiltonian number_operator(int n, int qubits);

struct JwOptions {
  /// Replace the interior Z-string of nearest-neighbour ring-closure hops by
  /// its constant value in the target sector. Only valid inside that sector.
  bool parity_shortcut = true;
};

/// Qubit Hamiltonian of the (extended) SU(N) Hubbard ring. Hops of range
/// r > 1 always keep their explicit interior Z-string.
PauliHamiltonian build_qubit_hamiltonian(const HubbardModel& model, const SpinSector& sector,
                                         const JwOptions& opts = {});
/// Sector-independent form (explicit Z-strings everywhere); exact on the full Fock space.
PauliHamiltonian build_qubit_hamiltonian(const HubbardModel& model);

/// Persistent-current operator -dH/dphi at the model's flux; for nearest
/// neighbour hopping, (2 pi i t/L) sum (e^{i 2 pi phi/L} c^dag_{i,s} c_{i+1,s} - h.c.).
PauliHamiltonian build_current_operator(const HubbardModel& model, const SpinSector& sector,
                                        const JwOptions& opts = {});
PauliHamiltonian build_current_operator(const HubbardModel& model);

}  // namespace sunvqe
