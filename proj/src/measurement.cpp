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

#include "sunvqe/measurement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace sunvqe {

namespace {

constexpr double kStructureTol = 1e-9;

struct BondKey {
  int p, q;
  std::uint64_t z_string;
  auto operator<=>(const BondKey&) const = default;
};

struct BondCoefficients {
  cplx xx{0.0, 0.0}, yy{0.0, 0.0}, xy{0.0, 0.0}, yx{0.0, 0.0};
  std::vector<std::size_t> terms;
};

BondObservable make_bond(const BondKey& key, const BondCoefficients& c) {
  const bool hopping_form = std::abs(c.xx - c.yy) < kStructureTol && std::abs(c.xy + c.yx) < kStructureTol &&
                            std::abs(c.xx.imag()) < kStructureTol && std::abs(c.xy.imag()) < kStructureTol;
  if (!hopping_form)
    throw std::invalid_argument("group_terms: bond (" + std::to_string(key.p) + "," + std::to_string(key.q) +
                                ") is not of hopping form");
  // weight * K(angle) has XX coefficient weight cos(angle)/2 and X_p Y_q coefficient -weight sin(angle)/2.
  const double cx = 2.0 * c.xx.real(), sy = -2.0 * c.xy.real();
  double angle = cx == 0.0 ? std::numbers::pi / 2 : std::atan(sy / cx);
  double weight = cx == 0.0 ? sy : cx / std::cos(angle);
  BondObservable b;
  b.q0 = key.p;
  b.q1 = key.q;
  b.angle = angle;
  b.weight = weight;
  b.z_string = key.z_string;
  b.terms = c.terms;
  return b;
}

double parity_sign(std::uint64_t word, std::uint64_t mask) { return (std::popcount(word & mask) & 1) ? -1.0 : 1.0; }

}  // namespace

std::string to_string(GroupLabel label) {
  switch (label) {
    case GroupLabel::kEvenOddHop: return "EVEN_ODD_HOP";
    case GroupLabel::kOddEvenHop: return "ODD_EVEN_HOP";
    case GroupLabel::kClosedHop: return "CLOSED_HOP";
    case GroupLabel::kDiagonal: return "DIAGONAL";
  }
  return "UNKNOWN";
}

double hop_basis_angle(double phi, int L) { return 2.0 * std::numbers::pi * phi / L; }

std::vector<MeasurementGroup> group_terms(const PauliHamiltonian& H, const HubbardModel& model,
                                          const SpinSector& sector) {
  validate(model, sector);
  if (!model.nearest_neighbour())
    throw std::invalid_argument("group_terms: long-range models are not supported (R_t, R_V must be <= 1)");
  if (H.qubits() != model.qubits()) throw std::invalid_argument("group_terms: Hamiltonian/model size mismatch");
  const int L = model.L;

  MeasurementGroup diagonal{GroupLabel::kDiagonal, {}, {}};
  std::map<BondKey, BondCoefficients> bonds;
  for (std::size_t k = 0; k < H.terms().size(); ++k) {
    const PauliString& s = H.terms()[k].string;
    if (s.is_diagonal()) {
      diagonal.terms.push_back(k);
      continue;
    }
    if (std::popcount(s.x()) != 2) throw std::invalid_argument("group_terms: term " + s.letters() + " is not a hop");
    const int p = std::countr_zero(s.x());
    const int q = 63 - std::countl_zero(s.x());
    const std::uint64_t ends = (std::uint64_t{1} << p) | (std::uint64_t{1} << q);
    const std::uint64_t z_string = s.z() & ~ends;
    if (p / L != q / L) throw std::invalid_argument("group_terms: hop between colours in " + s.letters());
    const std::uint64_t inside = ((std::uint64_t{1} << q) - 1) & ~((std::uint64_t{1} << (p + 1)) - 1);
    if (z_string & ~inside) throw std::invalid_argument("group_terms: Z-string outside the bond in " + s.letters());
    BondCoefficients& c = bonds[{p, q, z_string}];
    const bool zp = (s.z() >> p) & 1u, zq = (s.z() >> q) & 1u;
    const cplx coeff = H.terms()[k].coeff;
    if (!zp && !zq) c.xx += coeff;
    else if (zp && zq) c.yy += coeff;
    else if (!zp && zq) c.xy += coeff;
    else c.yx += coeff;
    c.terms.push_back(k);
  }

  bool all_odd = true;
  for (int n : sector.counts) all_odd = all_odd && (n % 2 == 1);
  const bool merge_closed = all_odd && L % 2 == 0;

  MeasurementGroup even{GroupLabel::kEvenOddHop, {}, {}}, odd{GroupLabel::kOddEvenHop, {}, {}},
      closed{GroupLabel::kClosedHop, {}, {}};
  for (const auto& [key, coeffs] : bonds) {
    BondObservable b = make_bond(key, coeffs);
    const int i = key.p % L;
    MeasurementGroup* target = nullptr;
    if (key.q == key.p + 1) {
      target = (i % 2 == 0) ? &even : &odd;
    } else if (i == 0 && key.q == key.p + L - 1) {
      target = (merge_closed && key.z_string == 0) ? &odd : &closed;
    } else {
      throw std::invalid_argument("group_terms: bond (" + std::to_string(key.p) + "," + std::to_string(key.q) +
                                  ") is not nearest-neighbour");
    }
    target->terms.insert(target->terms.end(), b.terms.begin(), b.terms.end());
    target->bonds.push_back(std::move(b));
  }

  std::vector<MeasurementGroup> groups;
  for (MeasurementGroup* g : {&even, &odd, &closed, &diagonal})
    if (!g->terms.empty()) {
      std::sort(g->terms.begin(), g->terms.end());
      groups.push_back(std::move(*g));
    }
  return groups;
}

Circuit basis_change(const MeasurementGroup& group, int qubits) {
  Circuit c(qubits);
  if (group.label == GroupLabel::kDiagonal) {
    std::clog << "warning: basis_change requested for the DIAGONAL group; nothing to rotate\n";
    return c;
  }
  for (const auto& b : group.bonds) c.add_hop_basis(b.q0, b.q1, b.angle);
  return c;
}

GroupedEstimator::GroupedEstimator(const PauliHamiltonian& H, std::vector<MeasurementGroup> groups)
    : groups_(std::move(groups)), qubits_(H.qubits()) {
  const std::size_t dim = std::size_t{1} << qubits_;
  for (const auto& g : groups_) {
    std::vector<double> values(dim, 0.0);
    if (g.label == GroupLabel::kDiagonal) {
      rotations_.emplace_back(qubits_);
      for (std::size_t k : g.terms) {
        const PauliTerm& t = H.terms()[k];
        if (t.string.is_identity()) {
          constant_ += t.coeff.real();
          continue;
        }
        for (std::uint64_t w = 0; w < dim; ++w) values[w] += t.coeff.real() * parity_sign(w, t.string.z());
      }
    } else {
      rotations_.push_back(basis_change(g, qubits_));
      for (const auto& b : g.bonds) {
        for (std::uint64_t w = 0; w < dim; ++w) {
          const int x0 = static_cast<int>((w >> b.q0) & 1u), x1 = static_cast<int>((w >> b.q1) & 1u);
          if (x0 == x1) continue;
          values[w] += (x0 ? b.weight : -b.weight) * parity_sign(w, b.z_string);
        }
      }
    }
    values_.push_back(std::move(values));
  }
}

double GroupedEstimator::analytic(const Statevector& state) const {
  double total = constant_;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    Statevector rotated = state;
    run_on(rotated, rotations_[g], {});
    double mean = 0.0;
    for (std::uint64_t w = 0; w < rotated.dimension(); ++w) mean += std::norm(rotated[w]) * values_[g][w];
    total += mean;
  }
  return total;
}

ShotEstimate GroupedEstimator::estimate(const Statevector& state, std::int64_t shots_per_group,
                                        std::uint64_t seed) const {
  if (shots_per_group < 1) throw std::invalid_argument("estimate_energy: shots must be >= 1");
  ShotEstimate est;
  est.shots_per_group = shots_per_group;
  est.mean = constant_;
  const Rng master(seed);
  double variance = 0.0;
  std::vector<double> probabilities(state.dimension());
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    Statevector rotated = state;
    run_on(rotated, rotations_[g], {});
    for (std::uint64_t w = 0; w < rotated.dimension(); ++w) probabilities[w] = std::norm(rotated[w]);
    Rng rng = master.split(to_string(groups_[g].label));
    const auto counts = sample_multinomial(probabilities, shots_per_group, rng);
    double sum = 0.0;
    for (std::uint64_t w = 0; w < counts.size(); ++w)
      if (counts[w]) sum += static_cast<double>(counts[w]) * values_[g][w];
    const double n = static_cast<double>(shots_per_group);
    const double mean = sum / n;
    double ss = 0.0;
    for (std::uint64_t w = 0; w < counts.size(); ++w)
      if (counts[w]) {
        const double d = values_[g][w] - mean;
        ss += static_cast<double>(counts[w]) * d * d;
      }
    const double var = shots_per_group > 1 ? ss / (n - 1.0) : 0.0;
    est.group_means.push_back(mean);
    est.group_stderrs.push_back(std::sqrt(var / n));
    est.mean += mean;
    variance += var / n;
  }
  est.stderr = std::sqrt(variance);
  return est;
}

ShotEstimate estimate_energy(const Statevector& state, const PauliHamiltonian& H,
                             const std::vector<MeasurementGroup>& groups, std::int64_t shots_per_group,
                             std::uint64_t seed) {
  return GroupedEstimator(H, groups).estimate(state, shots_per_group, seed);
}

}  // namespace sunvqe
