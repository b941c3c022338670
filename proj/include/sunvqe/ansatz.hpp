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

#include "sunvqe/circuit_sim.hpp"
#include "sunvqe/lattice_model.hpp"

namespace sunvqe {

struct AnsatzSpec {
  int L = 3;
  SpinSector sector;
  int layers = 1;
  std::uint64_t occupation = 0;  // initial occupation word; per-colour weights must match `sector`
};

/// All fermions of each colour packed from site 0: colour s occupies sites 0..N_s-1.
std::uint64_t default_occupation(int L, const SpinSector& sector);

AnsatzSpec make_ansatz_spec(const HubbardModel& model, const SpinSector& sector, int layers);

/// X gates on the occupied qubits, one RZ per occupied qubit, then `layers` copies of
///   hopping sublayer:     ISWAP_LIKE on (i + sL, i + 1 + sL), i = 0..L-2, for each colour
///   interaction sublayer: CRZ on (i + sL, i + (s+1)L), s = 0..N-2, for each site
///   one-qubit sublayer:   RZ on every qubit
/// Run it on |0...0>. Throws std::invalid_argument when the occupation does not match the sector.
Circuit build_ansatz(const AnsatzSpec& spec);

/// Closed-form scaling of the ansatz.
struct ComplexityReport {
  int N = 0, L = 0, layers = 0, particles = 0;
  int cnot_per_layer = 0;    // 5NL - 3N - 2L
  int depth_per_layer = 0;   // 2N + 3L - 5
  int params_per_layer = 0;  // 3NL - N - L
  int cnot_total = 0;
  int depth_total = 0;
  int parameter_total = 0;   // layers * params_per_layer + particles
  int measurement_cnot_depth = 3;  // extra CNOT depth of the hopping-basis rotations
};

ComplexityReport complexity_report(int N, int L, int layers, int particles = 0);

/// Bookkeeping read off a constructed circuit.
struct CircuitCounts {
  int x = 0, rz = 0, iswap = 0, crz = 0;
  int cnot = 0;        // 3 per ISWAP_LIKE, 2 per CRZ
  int cnot_depth = 0;  // as-soon-as-possible schedule of the CNOT-weighted two-qubit gates
  int parameters = 0;
};

CircuitCounts count_gates(const Circuit& circuit);

/// Per-colour Hamming weights of an outcome word match the sector.
bool hamming_check(std::uint64_t word, int L, const SpinSector& sector);

}  // namespace sunvqe
