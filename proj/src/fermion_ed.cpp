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

#include "sunvqe/fermion_ed.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sunvqe {

namespace {

constexpr int kMaxModes = 62;

Word bit(int n) { return Word{1} << n; }

// (-1)^(number of occupied modes below n)
int jw_sign(Word w, int n) { return (std::popcount(w & (bit(n) - 1)) & 1) ? -1 : 1; }

// Applies coeff * c^dag_m c_n to |w>, appending the result to `out`.
void add_hop(const SectorBasis& basis, std::int64_t col, int m, int n, cplx coeff, std::vector<Triplet>& out) {
  Word w = basis.word(col);
  if (!(w & bit(n))) return;
  int sign = jw_sign(w, n);
  w ^= bit(n);
  if (w & bit(m)) return;
  sign *= jw_sign(w, m);
  w |= bit(m);
  std::int64_t row = basis.index_of(w);
  if (row < 0) throw std::logic_error("hop left the sector");
  out.push_back({row, col, coeff * static_cast<double>(sign)});
}

int occ(Word w, int n) { return static_cast<int>((w >> n) & 1u); }

enum class HopWeight { kHamiltonian, kCurrent };

std::vector<Triplet> hopping_triplets(const HubbardModel& model, const SectorBasis& basis, HopWeight weight) {
  const int L = model.L;
  const double theta = 2.0 * std::numbers::pi * model.phi / L;
  std::vector<Triplet> out;
  for (std::int64_t col = 0; col < static_cast<std::int64_t>(basis.size()); ++col) {
    for (int r = 1; r <= model.hopping_range(); ++r) {
      const double tr = model.t[r - 1];
      if (tr == 0.0) continue;
      // a hop of range r crosses r bonds and picks up r flux phases
      const cplx phase = std::polar(1.0, theta * r);
      cplx forward = weight == HopWeight::kHamiltonian
                         ? -tr * phase
                         : cplx{0.0, 2.0 * std::numbers::pi * r * tr / L} * phase;
      for (int s = 0; s < model.N; ++s) {
        for (int i = 0; i < L; ++i) {
          const int m = i + s * L;
          const int n = (i + r) % L + s * L;
          add_hop(basis, col, m, n, forward, out);
          add_hop(basis, col, n, m, std::conj(forward), out);
        }
      }
    }
  }
  return out;
}

}  // namespace

SectorBasis::SectorBasis(int L, SpinSector sector, std::vector<Word> words)
    : L_(L), sector_(std::move(sector)), words_(std::move(words)) {
  index_.reserve(words_.size());
  for (std::size_t k = 0; k < words_.size(); ++k) index_.emplace(words_[k], static_cast<std::int64_t>(k));
}

std::int64_t SectorBasis::index_of(Word w) const {
  auto it = index_.find(w);
  return it == index_.end() ? -1 : it->second;
}

SectorBasis enumerate_sector_basis(int L, const SpinSector& sector) {
  const int N = static_cast<int>(sector.counts.size());
  if (L < 1 || N < 1) throw RangeError("sector: need L >= 1 and at least one colour");
  if (N * L > kMaxModes)
    throw RangeError("N*L: " + std::to_string(N * L) + " modes exceed the supported word width of " +
                     std::to_string(kMaxModes));
  std::vector<std::vector<Word>> per_colour(N);
  for (int s = 0; s < N; ++s) {
    if (sector.counts[s] < 0 || sector.counts[s] > L)
      throw RangeError("counts: N_" + std::to_string(s) + " outside [0, L]");
    for (Word mask = 0; mask < bit(L); ++mask)
      if (std::popcount(mask) == sector.counts[s]) per_colour[s].push_back(mask << (s * L));
  }
  std::vector<Word> words{0};
  for (int s = 0; s < N; ++s) {
    std::vector<Word> next;
    next.reserve(words.size() * per_colour[s].size());
    for (Word w : words)
      for (Word m : per_colour[s]) next.push_back(w | m);
    words = std::move(next);
  }
  std::sort(words.begin(), words.end());
  return SectorBasis(L, sector, std::move(words));
}

SparseHermitian build_fermionic_hamiltonian(const HubbardModel& model, const SectorBasis& basis) {
  const int L = model.L;
  std::vector<Triplet> entries = hopping_triplets(model, basis, HopWeight::kHamiltonian);
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(basis.size()); ++k) {
    const Word w = basis.word(k);
    double diag = 0.0;
    for (int i = 0; i < L; ++i) {
      int pairs = 0;
      for (int s = 0; s < model.N; ++s)
        for (int sp = s + 1; sp < model.N; ++sp) pairs += occ(w, i + s * L) * occ(w, i + sp * L);
      diag += model.U * pairs;
    }
    for (int r = 1; r <= model.interaction_range(); ++r) {
      for (int i = 0; i < L; ++i) {
        int ni = 0, nj = 0;
        for (int s = 0; s < model.N; ++s) {
          ni += occ(w, i + s * L);
          nj += occ(w, (i + r) % L + s * L);
        }
        diag += model.V[r - 1] * ni * nj;
      }
    }
    entries.push_back({k, k, diag});
  }
  return SparseHermitian(static_cast<std::int64_t>(basis.size()), std::move(entries), 1e-14);
}

SparseHermitian build_fermionic_current(const HubbardModel& model, const SectorBasis& basis) {
  return SparseHermitian(static_cast<std::int64_t>(basis.size()),
                         hopping_triplets(model, basis, HopWeight::kCurrent), 1e-14);
}

namespace {

GroundState from_dense(const DenseMatrix& H, const EigenOptions& opts) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(H);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  const auto& vals = solver.eigenvalues();
  GroundState gs;
  gs.energy = vals[0];
  gs.vector = solver.eigenvectors().col(0);
  gs.gap = vals.size() > 1 ? vals[1] - vals[0] : std::numeric_limits<double>::infinity();
  gs.degenerate = gs.gap < opts.degeneracy_tol;
  Eigen::Index k = 1;
  while (k < vals.size() && vals[k] - vals[0] < opts.degeneracy_tol) ++k;
  gs.ground_space = solver.eigenvectors().leftCols(k);
  gs.residual = (H * gs.vector - gs.energy * gs.vector).norm();
  return gs;
}

// Lanczos with full reorthogonalisation, restarted from the current Ritz vector.
GroundState lanczos(const SparseHermitian& H, const EigenOptions& opts) {
  const std::int64_t dim = H.dimension();
  const int m = static_cast<int>(std::min<std::int64_t>(opts.krylov_dim, dim));
  DenseVector start(dim);
  for (std::int64_t k = 0; k < dim; ++k) start[k] = 1.0 + 0.01 * std::sin(1.0 + 0.37 * static_cast<double>(k));
  start.normalize();

  double e0 = 0.0, e1 = 0.0, residual = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    DenseMatrix Q(dim, m);
    std::vector<double> alpha, beta;
    Q.col(0) = start;
    int used = 0;
    for (int j = 0; j < m; ++j) {
      DenseVector w = H.apply(Q.col(j));
      alpha.push_back(Q.col(j).dot(w).real());
      for (int pass = 0; pass < 2; ++pass) w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).adjoint() * w);
      used = j + 1;
      const double b = w.norm();
      if (j + 1 == m || b < 1e-13) break;
      beta.push_back(b);
      Q.col(j + 1) = w / b;
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(used, used);
    for (int j = 0; j < used; ++j) {
      T(j, j) = alpha[j];
      if (j + 1 < used) T(j, j + 1) = T(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(T);
    e0 = tri.eigenvalues()[0];
    e1 = used > 1 ? tri.eigenvalues()[1] : std::numeric_limits<double>::infinity();
    DenseVector ritz = Q.leftCols(used) * tri.eigenvectors().col(0).cast<cplx>();
    ritz.normalize();
    residual = (H.apply(ritz) - e0 * ritz).norm();
    start = ritz;
    if (residual < opts.residual_tol * std::max(1.0, std::abs(e0))) {
      GroundState gs;
      gs.energy = e0;
      gs.vector = ritz;
      gs.gap = e1 - e0;
      gs.degenerate = gs.gap < opts.degeneracy_tol;
      gs.ground_space = ritz;
      gs.residual = residual;
      return gs;
    }
  }
  std::ostringstream msg;
  msg << "Lanczos did not converge: residual norm " << residual;
  throw std::runtime_error(msg.str());
}

}  // namespace

GroundState ground_state(const SparseHermitian& H, const EigenOptions& opts) {
  if (H.dimension() < 1) throw std::invalid_argument("ground_state: empty matrix");
  if (H.dimension() <= opts.dense_cutoff) return from_dense(H.to_dense(), opts);
  GroundState gs = lanczos(H, opts);
  // The Krylov gap estimate flags possible degeneracy; resolve the ground space densely.
  if (gs.degenerate) return from_dense(H.to_dense(), opts);
  return gs;
}

std::vector<double> sector_spectrum(const HubbardModel& model, const SpinSector& sector) {
  validate(model, sector);
  const SectorBasis basis = enumerate_sector_basis(model.L, sector);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(build_fermionic_hamiltonian(model, basis).to_dense(),
                                                    Eigen::EigenvaluesOnly);
  const auto& vals = solver.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

CurrentValue current_expectation(const SparseHermitian& current, const GroundState& gs) {
  if (!gs.degenerate || gs.ground_space.cols() < 2) {
    return {gs.vector.dot(current.apply(gs.vector)).real(), gs.degenerate};
  }
  const DenseMatrix& P = gs.ground_space;
  DenseMatrix projected(P.cols(), P.cols());
  for (Eigen::Index c = 0; c < P.cols(); ++c) projected.col(c) = P.adjoint() * current.apply(P.col(c));
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(projected, Eigen::EigenvaluesOnly);
  const auto& vals = solver.eigenvalues();
  return {0.5 * (vals[0] + vals[vals.size() - 1]), true};
}

DenseVector left_limit_state(const SparseHermitian& current, const GroundState& gs) {
  if (!gs.degenerate || gs.ground_space.cols() < 2) return gs.vector;
  const DenseMatrix& P = gs.ground_space;
  DenseMatrix projected(P.cols(), P.cols());
  for (Eigen::Index c = 0; c < P.cols(); ++c) projected.col(c) = P.adjoint() * current.apply(P.col(c));
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(projected);
  // H(phi* - d) = H(phi*) + d I + O(d^2): the lowest current eigenvector survives.
  return P * solver.eigenvectors().col(0);
}

CurrentValue persistent_current_ed(const HubbardModel& model, const SpinSector& sector, const EigenOptions& opts) {
  validate(model, sector);
  const SectorBasis basis = enumerate_sector_basis(model.L, sector);
  const GroundState gs = ground_state(build_fermionic_hamiltonian(model, basis), opts);
  return current_expectation(build_fermionic_current(model, basis), gs);
}

std::vector<cplx> embed_in_full_space(const DenseVector& sector_state, const SectorBasis& basis) {
  if (static_cast<std::size_t>(sector_state.size()) != basis.size())
    throw std::invalid_argument("embed_in_full_space: vector does not match the basis");
  if (basis.modes() > 30) throw RangeError("N*L: too many modes to embed densely");
  std::vector<cplx> full(std::size_t{1} << basis.modes(), cplx{0.0, 0.0});
  for (std::size_t k = 0; k < basis.size(); ++k) full[basis.word(k)] = sector_state[static_cast<Eigen::Index>(k)];
  return full;
}

double entanglement_entropy_ed(const DenseVector& sector_state, const SectorBasis& basis,
                               std::span<const int> subset) {
  const int n = basis.modes();
  std::vector<int> in_a(n, 0);
  for (int q : subset) {
    if (q < 0 || q >= n) throw RangeError("subset: mode index out of range");
    in_a[q] = 1;
  }
  const int na = std::count(in_a.begin(), in_a.end(), 1);
  if (na == 0 || na == n) throw RangeError("subset: must be a proper nonempty subset");

  // rho_A(a, a') = sum_b psi(a, b) conj(psi(a', b)), restricted to the sector support.
  auto split = [&](Word w) {
    Word a = 0, b = 0;
    int ia = 0, ib = 0;
    for (int q = 0; q < n; ++q) {
      if (in_a[q])
        a |= ((w >> q) & 1u) << ia++;
      else
        b |= ((w >> q) & 1u) << ib++;
    }
    return std::pair{a, b};
  };
  std::unordered_map<Word, std::vector<std::pair<Word, cplx>>> by_b;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto [a, b] = split(basis.word(k));
    by_b[b].push_back({a, sector_state[static_cast<Eigen::Index>(k)]});
  }
  DenseMatrix rho = DenseMatrix::Zero(Eigen::Index{1} << na, Eigen::Index{1} << na);
  for (const auto& [b, column] : by_b)
    for (const auto& [a, x] : column)
      for (const auto& [ap, y] : column) rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(ap)) += x * std::conj(y);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(rho, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (double p : solver.eigenvalues())
    if (p > 1e-15) entropy -= p * std::log(p);
  return entropy;
}

EdPoint solve_ed_point(const HubbardModel& model, const SpinSector& sector, std::span<const int> entropy_cut,
                       const EigenOptions& opts) {
  validate(model, sector);
  const SectorBasis basis = enumerate_sector_basis(model.L, sector);
  EdPoint p;
  p.phi = model.phi;
  p.state = ground_state(build_fermionic_hamiltonian(model, basis), opts);
  p.energy = p.state.energy;
  const SparseHermitian current = build_fermionic_current(model, basis);
  const CurrentValue I = current_expectation(current, p.state);
  p.current = I.current;
  p.degenerate = p.state.degenerate;
  p.entropy = entropy_cut.empty() ? 0.0
                                  : entanglement_entropy_ed(left_limit_state(current, p.state), basis, entropy_cut);
  return p;
}

std::vector<bool> detect_level_crossings(const HubbardModel& model, const SpinSector& sector,
                                         std::span<const double> grid, int substeps) {
  validate(model, sector);
  if (grid.empty()) return {};
  const SectorBasis basis = enumerate_sector_basis(model.L, sector);
  auto solve = [&](double phi) { return ground_state(build_fermionic_hamiltonian(model.with_phi(phi), basis)); };
  std::vector<bool> crossing(grid.size(), false);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double lo = grid[k];
    const double hi = k + 1 < grid.size() ? grid[k + 1] : grid[0] + 1.0;
    GroundState prev = solve(lo);
    bool hit = prev.degenerate;
    for (int j = 1; j <= substeps && !hit; ++j) {
      GroundState cur = solve(lo + (hi - lo) * j / substeps);
      hit = cur.degenerate || std::abs(prev.vector.dot(cur.vector)) < 0.5;
      prev = std::move(cur);
    }
    crossing[k] = hit;
  }
  return crossing;
}

}  // namespace sunvqe
