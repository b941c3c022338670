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

#include "sunvqe/jw.hpp"

#include <numbers>
#include <optional>

namespace sunvqe {

namespace {

std::uint64_t bits_between(int a, int b) {
  const int lo = std::min(a, b), hi = std::max(a, b);
  if (hi - lo < 2) return 0;
  return ((std::uint64_t{1} << hi) - 1) & ~((std::uint64_t{1} << (lo + 1)) - 1);
}

// Strips the interior Z-string of a ring-closure hop and folds in its sector value.
PauliHamiltonian replace_interior(const PauliHamiltonian& hop, std::uint64_t interior, double value) {
  std::vector<PauliTerm> out;
  for (const auto& t : hop.terms())
    out.push_back({t.coeff * value, PauliString(t.string.qubits(), t.string.x(), t.string.z() & ~interior)});
  return PauliHamiltonian(hop.qubits(), out);
}

enum class Weight { kHamiltonian, kCurrent };

// sum_{r,s,i} (w_r c^dag_{i,s} c_{i+r,s} + h.c.)
PauliHamiltonian hopping_part(const HubbardModel& model, const std::optional<SpinSector>& sector, Weight weight) {
  const int L = model.L, nq = model.qubits();
  const double theta = 2.0 * std::numbers::pi * model.phi / L;
  PauliHamiltonian out(nq);
  std::vector<PauliHamiltonian> create, destroy;
  for (int n = 0; n < nq; ++n) {
    create.push_back(creation_operator(n, nq));
    destroy.push_back(annihilation_operator(n, nq));
  }
  for (int r = 1; r <= model.hopping_range(); ++r) {
    const double tr = model.t[r - 1];
    if (tr == 0.0) continue;
    const cplx phase = std::polar(1.0, theta * r);
    const cplx w = weight == Weight::kHamiltonian ? -tr * phase
                                                  : cplx{0.0, 2.0 * std::numbers::pi * r * tr / L} * phase;
    for (int s = 0; s < model.N; ++s) {
      for (int i = 0; i < L; ++i) {
        const int a = mode_to_qubit(i, s, L, model.N);
        const int b = mode_to_qubit((i + r) % L, s, L, model.N);
        PauliHamiltonian hop = create[a] * destroy[b] * w;
        hop += hop.adjoint();
        if (sector && r == 1 && i == L - 1 && L > 2) {
          // With exactly one endpoint occupied, the interior holds N_s - 1 fermions
          // of colour s, so the string equals -P_{L-1,s}.
          hop = replace_interior(hop, bits_between(a, b), -static_cast<double>(parity(i, s, L, *sector)));
        }
        out += hop;
      }
    }
  }
  return out;
}

PauliHamiltonian interaction_part(const HubbardModel& model) {
  const int L = model.L, N = model.N, nq = model.qubits();
  PauliHamiltonian out(nq);
  std::vector<PauliHamiltonian> number;
  for (int n = 0; n < nq; ++n) number.push_back(number_operator(n, nq));
  if (model.U != 0.0)
    for (int i = 0; i < L; ++i)
      for (int s = 0; s < N; ++s)
        for (int sp = s + 1; sp < N; ++sp)
          out += number[mode_to_qubit(i, s, L, N)] * number[mode_to_qubit(i, sp, L, N)] * cplx{model.U, 0.0};
  for (int r = 1; r <= model.interaction_range(); ++r) {
    const double vr = model.V[r - 1];
    if (vr == 0.0) continue;
    for (int i = 0; i < L; ++i)
      for (int s = 0; s < N; ++s)
        for (int sp = 0; sp < N; ++sp)
          out += number[mode_to_qubit(i, s, L, N)] * number[mode_to_qubit((i + r) % L, sp, L, N)] * cplx{vr, 0.0};
  }
  return out;
}

}  // namespace

int mode_to_qubit(int i, int s, int L, int N) {
  if (i < 0 || i >= L) throw RangeError("i: site " + std::to_string(i) + " outside [0, " + std::to_string(L) + ")");
  if (s < 0 || s >= N) throw RangeError("s: colour " + std::to_string(s) + " outside [0, " + std::to_string(N) + ")");
  return i + s * L;
}

ModeIndex qubit_to_mode(int n, int L, int N) {
  if (n < 0 || n >= N * L) throw RangeError("n: qubit " + std::to_string(n) + " outside [0, N*L)");
  return {n % L, n / L, n};
}

int parity(int i, int s, int L, const SpinSector& sector) {
  if (s < 0 || s >= static_cast<int>(sector.counts.size())) throw RangeError("s: colour outside the sector");
  if (i < 0 || i >= L) throw RangeError("i: site outside [0, L)");
  return (i == L - 1 && (sector.counts[s] % 2) == 1) ? -1 : 1;
}

PauliHamiltonian annihilation_operator(int n, int qubits) {
  const std::uint64_t string = (std::uint64_t{1} << n) - 1;
  const std::uint64_t b = std::uint64_t{1} << n;
  PauliHamiltonian c(qubits);
  // |0><1| = (X + iY)/2
  c.add({0.5, 0.0}, PauliString(qubits, b, string));
  c.add({0.0, 0.5}, PauliString(qubits, b, string | b));
  return c;
}

PauliHamiltonian creation_operator(int n, int qubits) { return annihilation_operator(n, qubits).adjoint(); }

PauliHamiltonian number_operator(int n, int qubits) {
  PauliHamiltonian num(qubits);
  num.add({0.5, 0.0}, PauliString::identity(qubits));
  num.add({-0.5, 0.0}, PauliString::single(qubits, n, 'Z'));
  return num;
}

PauliHamiltonian build_qubit_hamiltonian(const HubbardModel& model, const SpinSector& sector, const JwOptions& opts) {
  validate(model, sector);
  if (!opts.parity_shortcut) return build_qubit_hamiltonian(model);
  return hopping_part(model, sector, Weight::kHamiltonian) + interaction_part(model);
}

PauliHamiltonian build_qubit_hamiltonian(const HubbardModel& model) {
  validate(model);
  return hopping_part(model, std::nullopt, Weight::kHamiltonian) + interaction_part(model);
}

PauliHamiltonian build_current_operator(const HubbardModel& model, const SpinSector& sector, const JwOptions& opts) {
  validate(model, sector);
  if (!opts.parity_shortcut) return build_current_operator(model);
  return hopping_part(model, sector, Weight::kCurrent);
}

PauliHamiltonian build_current_operator(const HubbardModel& model) {
  validate(model);
  return hopping_part(model, std::nullopt, Weight::kCurrent);
}

}  // namespace sunvqe
