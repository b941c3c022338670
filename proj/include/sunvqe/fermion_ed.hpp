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
#include <span>
#include <unordered_map>
#include <vector>

#include "sunvqe/lattice_model.hpp"
#include "sunvqe/sparse_matrix.hpp"

namespace sunvqe {

/// Occupation word: bit n = occupation of mode (site i, colour s), n = i + s*L.
using Word = std::uint64_t;

/// Fixed-(N_0, ..., N_{N-1}) sector of the Fock space, in ascending word order.
class SectorBasis {
 public:
  SectorBasis(int L, SpinSector sector, std::vector<Word> words);

  int L() const { return L_; }
  int N() const { return static_cast<int>(sector_.counts.size()); }
  int modes() const { return L_ * N(); }
  const SpinSector& sector() const { return sector_; }
  std::size_t size() const { return words_.size(); }
  Word word(std::size_t k) const { return words_[k]; }
  const std::vector<Word>& words() const { return words_; }
  /// Position of `w`, or -1 when it is not in the sector.
  std::int64_t index_of(Word w) const;

 private:
  int L_;
  SpinSector sector_;
  std::vector<Word> words_;
  std::unordered_map<Word, std::int64_t> index_;
};

SectorBasis enumerate_sector_basis(int L, const SpinSector& sector);

/// Sector Hamiltonian built directly from fermionic ladder algebra.
SparseHermitian build_fermionic_hamiltonian(const HubbardModel& model, const SectorBasis& basis);

/// Current operator -dH/dphi in the sector. For nearest-neighbour hopping this is
/// (2 pi i t / L) sum (e^{i 2 pi phi/L} c^dag_{i,s} c_{i+1,s} - h.c.).
SparseHermitian build_fermionic_current(const HubbardModel& model, const SectorBasis& basis);

struct EigenOptions {
  std::int64_t dense_cutoff = 512;  // dense solve up to this dimension, Lanczos above
  double degeneracy_tol = 1e-8;
  double residual_tol = 1e-10;
  int max_restarts = 50;
  int krylov_dim = 120;
};

struct GroundState {
  double energy = 0.0;
  DenseVector vector;        // unit norm
  double gap = 0.0;          // E_1 - E_0 (infinity for 1x1)
  bool degenerate = false;   // gap below EigenOptions::degeneracy_tol
  DenseMatrix ground_space;  // orthonormal columns spanning the (near-)degenerate ground space
  double residual = 0.0;     // ||H v - E v||
};

/// Throws std::runtime_error carrying the residual norm when Lanczos fails to converge.
GroundState ground_state(const SparseHermitian& H, const EigenOptions& opts = {});

/// Full spectrum of the sector Hamiltonian, ascending (dense solve).
std::vector<double> sector_spectrum(const HubbardModel& model, const SpinSector& sector);

struct CurrentValue {
  double current = 0.0;
  bool degenerate = false;  // evaluated at a level crossing: average of the one-sided limits
};

/// Expectation of the current operator in `gs`. At a degenerate point the
/// result is the mean of the extreme eigenvalues of the current projected on
/// the ground space, which are the limits from either side of the crossing.
CurrentValue current_expectation(const SparseHermitian& current, const GroundState& gs);

/// The ground state selected by approaching the flux from below. Away from a
/// crossing this is gs.vector; at a crossing, the ground-space eigenvector of
/// the projected current with the lowest eigenvalue.
DenseVector left_limit_state(const SparseHermitian& current, const GroundState& gs);

CurrentValue persistent_current_ed(const HubbardModel& model, const SpinSector& sector,
                                   const EigenOptions& opts = {});

/// Sector vector scattered into the 2^(N L) computational basis.
std::vector<cplx> embed_in_full_space(const DenseVector& sector_state, const SectorBasis& basis);

/// Von Neumann entropy (nats) of the modes in `subset`, from the explicit
/// reduced density matrix of the embedded state.
double entanglement_entropy_ed(const DenseVector& sector_state, const SectorBasis& basis,
                               std::span<const int> subset);

/// Everything the sweep needs from the oracle at one flux value. At a level
/// crossing the entropy refers to left_limit_state.
struct EdPoint {
  double phi = 0.0;
  double energy = 0.0;
  double current = 0.0;
  double entropy = 0.0;
  bool degenerate = false;
  GroundState state;
};

EdPoint solve_ed_point(const HubbardModel& model, const SpinSector& sector, std::span<const int> entropy_cut,
                       const EigenOptions& opts = {});

/// For each interval [grid[k], grid[k+1]] (the last one wrapping to grid[0] + 1)
/// reports whether the ground state crosses another level inside it. A
/// crossing shows up as a collapse of the overlap between ground states at
/// neighbouring sub-steps, since crossing levels live in different momentum
/// sectors of the ring.
std::vector<bool> detect_level_crossings(const HubbardModel& model, const SpinSector& sector,
                                         std::span<const double> grid, int substeps = 4);

}  // namespace sunvqe
