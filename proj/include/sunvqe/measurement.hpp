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
#include <string>
#include <vector>

#include "sunvqe/circuit_sim.hpp"
#include "sunvqe/lattice_model.hpp"
#include "sunvqe/pauli.hpp"

namespace sunvqe {

enum class GroupLabel { kEvenOddHop, kOddEvenHop, kClosedHop, kDiagonal };

std::string to_string(GroupLabel label);

/// One hopping bond read out in its own eigenbasis:
///   weight * Z(z_string) * (e^{i angle} c^dag_{q0} c_{q1} + h.c.)
/// After HOP_BASIS(angle) on (q0, q1) it is diagonal with eigenvalue
/// +weight on x_q0=1,x_q1=0 and -weight on x_q0=0,x_q1=1 (times the Z-string sign).
struct BondObservable {
  int q0 = 0;
  int q1 = 0;
  double angle = 0.0;
  double weight = 0.0;
  std::uint64_t z_string = 0;
  std::vector<std::size_t> terms;  // indices into the Hamiltonian's term list
};

struct MeasurementGroup {
  GroupLabel label = GroupLabel::kDiagonal;
  std::vector<std::size_t> terms;    // every Hamiltonian term measured by this group
  std::vector<BondObservable> bonds; // empty for the diagonal group
};

/// Commuting partition of a nearest-neighbour Hubbard Hamiltonian built by
/// build_qubit_hamiltonian. Empty groups are omitted. When every N_s is odd,
/// L is even and the ring-closure bonds carry no Z-string, those bonds are
/// read out together with the odd-even set (their qubits are disjoint).
/// Throws std::invalid_argument for long-range models or terms outside the
/// hopping/diagonal form.
std::vector<MeasurementGroup> group_terms(const PauliHamiltonian& H, const HubbardModel& model,
                                          const SpinSector& sector);

/// HOP_BASIS rotations of a hopping group. The diagonal group needs none:
/// an empty circuit is returned and a warning is written to std::clog.
Circuit basis_change(const MeasurementGroup& group, int qubits);

/// Angle of U_L(phi) for a ring of L sites.
double hop_basis_angle(double phi, int L);

struct ShotEstimate {
  double mean = 0.0;
  double stderr = 0.0;
  std::int64_t shots_per_group = 0;
  std::vector<double> group_means;
  std::vector<double> group_stderrs;
};

/// Grouped shot-based estimator with the per-group outcome values tabulated once.
class GroupedEstimator {
 public:
  GroupedEstimator(const PauliHamiltonian& H, std::vector<MeasurementGroup> groups);

  const std::vector<MeasurementGroup>& groups() const { return groups_; }
  double constant() const { return constant_; }
  /// Eigenvalue of group g's observable on computational outcome `word` (after rotation).
  double outcome_value(std::size_t g, std::uint64_t word) const { return values_[g][word]; }

  /// Infinite-shot limit: exact post-rotation probabilities.
  double analytic(const Statevector& state) const;
  /// Rotates, samples `shots_per_group` outcomes per group and averages. Each
  /// group draws from its own stream split from `seed` by the group label.
  ShotEstimate estimate(const Statevector& state, std::int64_t shots_per_group, std::uint64_t seed) const;

 private:
  std::vector<MeasurementGroup> groups_;
  std::vector<Circuit> rotations_;
  std::vector<std::vector<double>> values_;
  double constant_ = 0.0;
  int qubits_ = 0;
};

ShotEstimate estimate_energy(const Statevector& state, const PauliHamiltonian& H,
                             const std::vector<MeasurementGroup>& groups, std::int64_t shots_per_group,
                             std::uint64_t seed);

}  // namespace sunvqe
