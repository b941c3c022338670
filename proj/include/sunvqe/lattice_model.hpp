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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sunvqe {

using cplx = std::complex<double>;

/// Raised when a model, sector or derived quantity violates a documented bound.
/// The message names the offending field.
class RangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Extended SU(N) Hubbard ring pierced by a magnetic flux.
///
/// `t[r-1]` is the hopping amplitude at distance r and `V[r-1]` the
/// density-density coupling at distance r. A nearest-neighbour model is
/// simply `t = {t1}`, `V = {V1}` (or empty V). `phi` is measured in units of
/// the bare flux quantum.
struct HubbardModel {
  int L = 3;
  int N = 3;
  std::vector<double> t{1.0};
  double U = 0.0;
  std::vector<double> V{};
  double phi = 0.0;

  int qubits() const { return N * L; }
  int hopping_range() const { return static_cast<int>(t.size()); }
  int interaction_range() const { return static_cast<int>(V.size()); }
  bool nearest_neighbour() const { return t.size() <= 1 && V.size() <= 1; }

  HubbardModel with_phi(double new_phi) const {
    HubbardModel m = *this;
    m.phi = new_phi;
    return m;
  }
};

/// Number of fermions per colour.
struct SpinSector {
  std::vector<int> counts;

  int particles() const;
  /// One fermion of every colour.
  static SpinSector one_per_colour(int N) { return SpinSector{std::vector<int>(N, 1)}; }
};

/// Checks every model and sector invariant; throws RangeError otherwise.
void validate(const HubbardModel& model);
void validate(const HubbardModel& model, const SpinSector& sector);

/// exp(i 2 pi phi / L).
cplx flux_phase(const HubbardModel& model);

/// Edge multiplicity of the ring circulant graph at distance r:
/// 2 for r < L/2, 1 for the antipodal distance r = L/2.
int ring_edge_multiplicity(int L, int r);

/// lambda = sum_r g_L(r) V_r.
double lambda_R(int L, const std::vector<double>& V);

}  // namespace sunvqe
