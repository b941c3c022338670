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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "sunvqe/circuit_sim.hpp"
#include "sunvqe/fermion_ed.hpp"
#include "sunvqe/jw.hpp"

using namespace sunvqe;

namespace {

HubbardModel make(int N, int L, double U, std::vector<double> V = {}, double phi = 0.0, std::vector<double> t = {1.0}) {
  HubbardModel m;
  m.N = N;
  m.L = L;
  m.t = std::move(t);
  m.U = U;
  m.V = std::move(V);
  m.phi = phi;
  return m;
}

oracle::Mat dense(const PauliHamiltonian& H) { return to_dense(H).to_dense(); }

std::vector<double> sorted_eigenvalues(const DenseMatrix& M) {
  const Eigen::VectorXd ev = oracle::eigenvalues(M);
  return {ev.begin(), ev.end()};
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  EXPECT_EQ(a.size(), b.size());
  double g = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) g = std::max(g, std::abs(a[k] - b[k]));
  return g;
}

struct Case {
  int N, L;
  std::vector<int> counts;
};

const std::vector<Case> kSectorCases = {
    {1, 2, {1}},       {1, 4, {2}},       {1, 5, {3}},          {2, 2, {1, 1}},    {2, 3, {1, 1}},
    {2, 4, {1, 1}},    {2, 4, {2, 1}},    {2, 5, {2, 2}},       {2, 6, {3, 3}},    {3, 3, {1, 1, 1}},
    {3, 3, {2, 1, 0}}, {3, 4, {1, 1, 1}}, {3, 4, {2, 2, 1}},    {4, 2, {1, 1, 1, 1}}, {4, 3, {1, 1, 1, 1}},
    {6, 2, {1, 1, 1, 1, 1, 1}},
};

}  // namespace

TEST(ModeIndex, Mapping) {
  EXPECT_EQ(mode_to_qubit(1, 2, 3, 3), 7);
  EXPECT_EQ(mode_to_qubit(0, 0, 3, 3), 0);
  for (int n = 0; n < 12; ++n) {
    const ModeIndex m = qubit_to_mode(n, 4, 3);
    EXPECT_EQ(mode_to_qubit(m.i, m.s, 4, 3), n);
  }
  EXPECT_THROW(mode_to_qubit(3, 0, 3, 3), std::invalid_argument);
}

TEST(Parity, ClosureSign) {
  const SpinSector odd{{1, 2, 3}};
  EXPECT_EQ(parity(2, 0, 3, odd), -1);
  EXPECT_EQ(parity(2, 1, 3, odd), 1);
  EXPECT_EQ(parity(2, 2, 3, odd), -1);
  for (int s = 0; s < 3; ++s) EXPECT_EQ(parity(0, s, 3, odd), 1);
}

TEST(LadderOperators, MatchReferenceMatrices) {
  for (int modes = 1; modes <= 6; ++modes)
    for (int n = 0; n < modes; ++n) {
      EXPECT_NEAR((dense(annihilation_operator(n, modes)) - oracle::annihilator(n, modes)).norm(), 0.0, 1e-14);
      EXPECT_NEAR((dense(creation_operator(n, modes)) - oracle::annihilator(n, modes).adjoint()).norm(), 0.0, 1e-14);
    }
}

TEST(LadderOperators, CanonicalAnticommutation) {
  std::mt19937_64 gen(3);
  for (int modes : {4, 6, 8}) {
    const oracle::Mat id = oracle::Mat::Identity(std::size_t{1} << modes, std::size_t{1} << modes);
    for (int trial = 0; trial < 10; ++trial) {
      const int m = static_cast<int>(gen() % modes), mp = static_cast<int>(gen() % modes);
      const oracle::Mat c = dense(annihilation_operator(m, modes));
      const oracle::Mat cp = dense(annihilation_operator(mp, modes));
      const oracle::Mat cpd = dense(creation_operator(mp, modes));
      const oracle::Mat anti = c * cpd + cpd * c;
      EXPECT_NEAR((anti - (m == mp ? id : oracle::Mat::Zero(id.rows(), id.cols()))).cwiseAbs().maxCoeff(), 0.0,
                  1e-12);
      EXPECT_NEAR((c * cp + cp * c).cwiseAbs().maxCoeff(), 0.0, 1e-12);
    }
  }
}

TEST(LadderOperators, NumberOperatorIsProjector) {
  const oracle::Mat n = dense(number_operator(2, 4));
  for (int w = 0; w < 16; ++w) EXPECT_DOUBLE_EQ(n(w, w).real(), (w >> 2) & 1);
  EXPECT_NEAR((n - oracle::Mat(n.diagonal().asDiagonal())).norm(), 0.0, 0.0);
}

TEST(QubitHamiltonian, TwoSiteRing) {
  const HubbardModel m = make(1, 2, 0.0);
  const PauliHamiltonian H = build_qubit_hamiltonian(m, SpinSector{{1}});
  EXPECT_NEAR(std::abs(H.coefficient(PauliString::from_letters("XX")) - cplx(-1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(H.coefficient(PauliString::from_letters("YY")) - cplx(-1.0, 0.0)), 0.0, 1e-15);
  const std::vector<std::uint64_t> words{1, 2};
  const auto ev = sorted_eigenvalues(restrict_to_words(H, words));
  EXPECT_NEAR(ev.front(), -2.0, 1e-14);
}

TEST(QubitHamiltonian, NoHoppingIsDiagonal) {
  HubbardModel m = make(3, 3, 2.0, {0.5}, 0.2, {0.0});
  for (const auto& t : build_qubit_hamiltonian(m, SpinSector::one_per_colour(3)).terms())
    EXPECT_TRUE(t.string.is_diagonal()) << t.string.letters();
}

TEST(QubitHamiltonian, Hermitian) {
  const HubbardModel m = make(3, 3, 1.0, {0.5}, 0.37);
  EXPECT_LT(build_qubit_hamiltonian(m, SpinSector::one_per_colour(3)).hermiticity_defect(), 1e-15);
  EXPECT_LT(build_current_operator(m, SpinSector::one_per_colour(3)).hermiticity_defect(), 1e-15);
}

TEST(QubitHamiltonian, FullSpaceMatchesFockOracle) {
  struct Model {
    int N, L;
    std::vector<double> t;
    double U;
    std::vector<double> V;
  };
  for (const Model& c : std::vector<Model>{{1, 2, {1}, 0, {}},
                                           {2, 2, {1}, 2, {0.5}},
                                           {1, 4, {1, 0.4}, 0, {0.3, 0.2}},
                                           {2, 3, {1}, 3, {0.7}},
                                           {2, 4, {1, 0.6}, 1.5, {0.5, 0.25}},
                                           {1, 5, {1, 0.3}, 0, {0.2, 0.1}}}) {
    for (double phi : {0.0, 0.23, 0.5}) {
      const HubbardModel m = make(c.N, c.L, c.U, c.V, phi, c.t);
      const oracle::Mat ref = oracle::hubbard_fock(c.L, c.N, c.t, c.U, c.V, phi);
      EXPECT_NEAR((dense(build_qubit_hamiltonian(m)) - ref).cwiseAbs().maxCoeff(), 0.0, 1e-12)
          << "N=" << c.N << " L=" << c.L << " phi=" << phi;
    }
  }
}

TEST(QubitHamiltonian, SectorSpectrumMatchesEd) {
  for (const Case& c : kSectorCases)
    for (double phi : {0.0, 0.3}) {
      const HubbardModel m = make(c.N, c.L, 2.5, {0.6}, phi);
      const SpinSector sector{c.counts};
      const SectorBasis basis = enumerate_sector_basis(c.L, sector);
      const PauliHamiltonian H = build_qubit_hamiltonian(m, sector);
      const auto jw = sorted_eigenvalues(restrict_to_words(H, basis.words()));
      EXPECT_LT(max_gap(jw, sector_spectrum(m, sector)), 1e-10) << "N=" << c.N << " L=" << c.L;
    }
}

TEST(QubitHamiltonian, SectorMatrixEqualsFermionicMatrix) {
  const HubbardModel m = make(3, 3, 5.0, {}, 0.27);
  const SpinSector sector = SpinSector::one_per_colour(3);
  const SectorBasis basis = enumerate_sector_basis(3, sector);
  const DenseMatrix jw = restrict_to_words(build_qubit_hamiltonian(m, sector), basis.words());
  const DenseMatrix ed = build_fermionic_hamiltonian(m, basis).to_dense();
  EXPECT_LT((jw - ed).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(QubitHamiltonian, BlockDiagonalInColourWeights) {
  const HubbardModel m = make(3, 4, 1.0, {0.5, 0.2}, 0.19, {1.0, 0.5});
  const SparseHermitian H = to_dense(build_qubit_hamiltonian(m));
  auto weights = [&](std::int64_t w) {
    std::vector<int> out;
    for (int s = 0; s < 3; ++s) out.push_back(std::popcount(static_cast<std::uint64_t>((w >> (4 * s)) & 0xF)));
    return out;
  };
  for (const Triplet& e : H.entries())
    if (std::abs(e.value) > 1e-14) EXPECT_EQ(weights(e.row), weights(e.col));
}

TEST(QubitHamiltonian, FullSpectrumIsUnionOfSectors) {
  for (auto [N, L] : std::vector<std::pair<int, int>>{{1, 4}, {2, 3}, {2, 4}, {5, 2}, {2, 5}}) {
    const HubbardModel m = make(N, L, 1.7, {0.4}, 0.41);
    std::vector<double> all = sorted_eigenvalues(to_dense(build_qubit_hamiltonian(m)).to_dense());
    std::vector<double> union_;
    std::vector<int> counts(N, 0);
    while (true) {
      const auto part = sector_spectrum(m, SpinSector{counts});
      union_.insert(union_.end(), part.begin(), part.end());
      int s = 0;
      while (s < N && ++counts[s] > L) counts[s++] = 0;
      if (s == N) break;
    }
    std::sort(union_.begin(), union_.end());
    EXPECT_LT(max_gap(all, union_), 1e-10) << "N=" << N << " L=" << L;
  }
}

TEST(CurrentOperator, HellmannFeynmanOnEdStates) {
  const SpinSector sector = SpinSector::one_per_colour(3);
  const SectorBasis basis = enumerate_sector_basis(3, sector);
  for (double phi : {0.0, 0.1, 0.2, 0.3, 0.7}) {
    const HubbardModel m = make(3, 3, 5.0, {}, phi);
    const GroundState gs = ground_state(build_fermionic_hamiltonian(m, basis));
    const auto psi = embed_in_full_space(gs.vector, basis);
    const double I = expectation(psi, build_current_operator(m, sector));
    const double h = 1e-4;
    const double ep = ground_state(build_fermionic_hamiltonian(m.with_phi(phi + h), basis)).energy;
    const double em = ground_state(build_fermionic_hamiltonian(m.with_phi(phi - h), basis)).energy;
    EXPECT_NEAR(I, -(ep - em) / (2 * h), 1e-5) << phi;
    if (phi == 0.0) EXPECT_NEAR(I, 0.0, 1e-10);
  }
}

TEST(CurrentOperator, MinusFluxDerivativeOfHamiltonian) {
  const HubbardModel m = make(2, 4, 1.0, {0.3}, 0.17, {1.0, 0.4});
  const double h = 1e-5;
  const oracle::Mat dH =
      (dense(build_qubit_hamiltonian(m.with_phi(m.phi + h))) - dense(build_qubit_hamiltonian(m.with_phi(m.phi - h)))) /
      (2 * h);
  EXPECT_NEAR((dense(build_current_operator(m)) + dH).cwiseAbs().maxCoeff(), 0.0, 1e-8);
}

TEST(JwExpectation, EdGroundStateEnergy) {
  const HubbardModel m = make(3, 3, 5.0, {}, 0.1);
  const SpinSector sector = SpinSector::one_per_colour(3);
  const SectorBasis basis = enumerate_sector_basis(3, sector);
  const GroundState gs = ground_state(build_fermionic_hamiltonian(m, basis));
  EXPECT_NEAR(expectation(embed_in_full_space(gs.vector, basis), build_qubit_hamiltonian(m, sector)), gs.energy,
              1e-10);
}
