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

#include "sunvqe/ansatz.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace sunvqe {

std::uint64_t default_occupation(int L, const SpinSector& sector) {
  std::uint64_t word = 0;
  for (std::size_t s = 0; s < sector.counts.size(); ++s)
    for (int i = 0; i < sector.counts[s]; ++i) word |= std::uint64_t{1} << (i + static_cast<int>(s) * L);
  return word;
}

AnsatzSpec make_ansatz_spec(const HubbardModel& model, const SpinSector& sector, int layers) {
  validate(model, sector);
  return {model.L, sector, layers, default_occupation(model.L, sector)};
}

Circuit build_ansatz(const AnsatzSpec& spec) {
  const int L = spec.L, N = static_cast<int>(spec.sector.counts.size());
  if (spec.layers < 0) throw std::invalid_argument("layers: must be >= 0");
  if (L < 1 || N < 1) throw std::invalid_argument("ansatz: empty register");
  if (!hamming_check(spec.occupation, L, spec.sector))
    throw std::invalid_argument("occupation: per-colour bit counts do not match the sector");
  Circuit c(N * L);
  for (int q = 0; q < N * L; ++q)
    if ((spec.occupation >> q) & 1u) c.add_x(q);
  for (int q = 0; q < N * L; ++q)
    if ((spec.occupation >> q) & 1u) c.add_rz(q);
  for (int layer = 0; layer < spec.layers; ++layer) {
    for (int s = 0; s < N; ++s)
      for (int i = 0; i + 1 < L; ++i) c.add_iswap_like(i + s * L, i + 1 + s * L);
    for (int i = 0; i < L; ++i)
      for (int s = 0; s + 1 < N; ++s) c.add_crz(i + s * L, i + (s + 1) * L);
    for (int q = 0; q < N * L; ++q) c.add_rz(q);
  }
  return c;
}

ComplexityReport complexity_report(int N, int L, int layers, int particles) {
  if (N < 1 || L < 1) throw std::invalid_argument("complexity_report: N and L must be >= 1");
  if (layers < 0) throw std::invalid_argument("complexity_report: layers must be >= 0");
  ComplexityReport r;
  r.N = N;
  r.L = L;
  r.layers = layers;
  r.particles = particles;
  r.cnot_per_layer = 5 * N * L - 3 * N - 2 * L;
  r.depth_per_layer = 2 * N + 3 * L - 5;
  r.params_per_layer = 3 * N * L - N - L;
  r.cnot_total = layers * r.cnot_per_layer;
  r.depth_total = layers * r.depth_per_layer;
  r.parameter_total = layers * r.params_per_layer + particles;
  return r;
}

CircuitCounts count_gates(const Circuit& circuit) {
  CircuitCounts counts;
  std::vector<int> ready(static_cast<std::size_t>(circuit.qubits()), 0);
  for (const Gate& g : circuit.gates()) {
    int cost = 0;
    switch (g.kind) {
      case GateKind::kX: ++counts.x; break;
      case GateKind::kRZ: ++counts.rz; break;
      case GateKind::kIswapLike: ++counts.iswap; cost = 3; break;
      case GateKind::kCRZ: ++counts.crz; cost = 2; break;
      case GateKind::kHopBasis: cost = 3; break;
    }
    if (cost > 0) {
      const int start = std::max(ready[g.q0], ready[g.q1]);
      ready[g.q0] = ready[g.q1] = start + cost;
    }
  }
  counts.cnot = 3 * counts.iswap + 2 * counts.crz;
  counts.cnot_depth = ready.empty() ? 0 : *std::max_element(ready.begin(), ready.end());
  counts.parameters = circuit.parameter_count();
  return counts;
}

bool hamming_check(std::uint64_t word, int L, const SpinSector& sector) {
  const int N = static_cast<int>(sector.counts.size());
  if (N * L < 64 && (word >> (N * L)) != 0) return false;
  const std::uint64_t block = (std::uint64_t{1} << L) - 1;
  for (int s = 0; s < N; ++s)
    if (std::popcount((word >> (s * L)) & block) != sector.counts[s]) return false;
  return true;
}

}  // namespace sunvqe
