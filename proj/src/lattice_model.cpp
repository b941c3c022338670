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

#include "sunvqe/lattice_model.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace sunvqe {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw RangeError(field + ": " + what);
}

void check_range(const char* field, int range, int L) {
  if (range > L / 2) {
    std::ostringstream msg;
    msg << "range " << range << " exceeds floor(L/2) = " << L / 2;
    fail(field, msg.str());
  }
}

}  // namespace

int SpinSector::particles() const { return std::accumulate(counts.begin(), counts.end(), 0); }

void validate(const HubbardModel& model) {
  if (model.L < 2) fail("L", "site count must be >= 2, got " + std::to_string(model.L));
  if (model.N < 1) fail("N", "component count must be >= 1, got " + std::to_string(model.N));
  if (model.qubits() > 62) fail("N*L", "more than 62 modes are not representable");
  check_range("t", model.hopping_range(), model.L);
  check_range("V", model.interaction_range(), model.L);
  for (double tr : model.t)
    if (!std::isfinite(tr)) fail("t", "hopping amplitude must be finite");
  if (!(model.U >= 0.0) || !std::isfinite(model.U))
    fail("U", "on-site coupling must be finite and >= 0");
  for (std::size_t r = 0; r < model.V.size(); ++r)
    if (!(model.V[r] >= 0.0) || !std::isfinite(model.V[r]))
      fail("V", "coupling V_" + std::to_string(r + 1) + " must be finite and >= 0");
  if (!std::isfinite(model.phi)) fail("phi", "flux must be finite");
}

void validate(const HubbardModel& model, const SpinSector& sector) {
  validate(model);
  if (static_cast<int>(sector.counts.size()) != model.N)
    fail("counts", "expected " + std::to_string(model.N) + " entries, got " +
                       std::to_string(sector.counts.size()));
  for (std::size_t s = 0; s < sector.counts.size(); ++s)
    if (sector.counts[s] < 0 || sector.counts[s] > model.L)
      fail("counts", "N_" + std::to_string(s) + " = " + std::to_string(sector.counts[s]) +
                         " outside [0, " + std::to_string(model.L) + "]");
}

cplx flux_phase(const HubbardModel& model) {
  const double reduced = std::fmod(model.phi, static_cast<double>(model.L));
  return std::polar(1.0, 2.0 * std::numbers::pi * reduced / model.L);
}

int ring_edge_multiplicity(int L, int r) {
  if (r < 1 || 2 * r > L) fail("r", "distance must lie in [1, floor(L/2)]");
  return 2 * r < L ? 2 : 1;
}

double lambda_R(int L, const std::vector<double>& V) {
  check_range("V", static_cast<int>(V.size()), L);
  double sum = 0.0;
  for (std::size_t r = 1; r <= V.size(); ++r) sum += ring_edge_multiplicity(L, static_cast<int>(r)) * V[r - 1];
  return sum;
}

}  // namespace sunvqe
