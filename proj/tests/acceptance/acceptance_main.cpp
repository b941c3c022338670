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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sunvqe/ansatz.hpp"
#include "sunvqe/circuit_sim.hpp"
#include "sunvqe/fermion_ed.hpp"
#include "sunvqe/jw.hpp"
#include "sunvqe/measurement.hpp"
#include "sunvqe/pauli.hpp"
#include "sunvqe/rng.hpp"
#include "sunvqe/vqe.hpp"

using namespace sunvqe;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

HubbardModel model(int N, int L, double U, std::vector<double> V = {}, std::vector<double> t = {1.0}) {
  HubbardModel m;
  m.N = N;
  m.L = L;
  m.U = U;
  m.V = std::move(V);
  m.t = std::move(t);
  return m;
}

double max_relative_deviation(const SweepResult& r) {
  double worst = 0.0;
  for (const SweepRecord& rec : r.records)
    worst = std::max(worst, std::abs(rec.energy_vqe - rec.energy_ed) / std::abs(rec.energy_ed));
  return worst;
}


Outcome jw_exactness() {
  struct Case {
    HubbardModel m;
    SpinSector sector;
  };
  std::vector<Case> cases;
  Rng rng(2024);
  auto phi = [&] { return rng.uniform(); };
  for (int N = 1; N <= 6; ++N)
    for (int L = 2; N * L <= 12; ++L) {
      std::vector<std::vector<int>> fillings{std::vector<int>(N, 1)};
      if (L >= 3) fillings.push_back(std::vector<int>(N, L / 2));
      if (N >= 2) {
        std::vector<int> mixed(N, 1);
        mixed[0] = L - 1;
        mixed[N - 1] = 0;
        fillings.push_back(mixed);
      }
      for (const auto& counts : fillings) {
        HubbardModel m = model(N, L, 1.0 + rng.uniform() * 4.0);
        if (L >= 4) m.V = {0.7 * rng.uniform()};
        if (L >= 5) m.t = {1.0, 0.4 * rng.uniform()};
        if (L >= 6) m.V = {0.5, 0.25};
        m.phi = phi();
        cases.push_back({m, SpinSector{counts}});
      }
    }
  double worst = 0.0;
  for (const Case& c : cases) {
    const SectorBasis basis = enumerate_sector_basis(c.m.L, c.sector);
    const DenseMatrix block = restrict_to_words(build_qubit_hamiltonian(c.m, c.sector), basis.words());
    const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(block, Eigen::EigenvaluesOnly);
    const std::vector<double> ed = sector_spectrum(c.m, c.sector);
    if (static_cast<std::size_t>(es.eigenvalues().size()) != ed.size()) return {false, "sector size mismatch"};
    for (std::size_t k = 0; k < ed.size(); ++k) worst = std::max(worst, std::abs(es.eigenvalues()[k] - ed[k]));
  }
  return {worst <= 1e-10, fmt("%zu (N, L, sector) cases, max |dlambda| = %.2e (bound 1e-10)", cases.size(), worst)};
}

Outcome fig2b_reproduction(SweepResult& three_layer_out) {
  const HubbardModel m = model(3, 3, 5.0);
  const SpinSector sector = SpinSector::one_per_colour(3);
  const std::vector<double> grid = default_flux_grid(21);
  VqeConfig cfg;
  cfg.layers = 3;
  three_layer_out = sweep_flux(m, sector, grid, cfg);
  cfg.layers = 1;
  const SweepResult one = sweep_flux(m, sector, grid, cfg);
  const double d3 = max_relative_deviation(three_layer_out), d1 = max_relative_deviation(one);
  return {d3 <= 1e-3 && d1 > 1e-3,
          fmt("3 layers: max rel. dev %.2e (bound 1e-3); 1 layer: %.2e (must exceed 1e-3)", d3, d1)};
}

Outcome current_consistency() {
  const SpinSector one3 = SpinSector::one_per_colour(3);
  struct Case {
    HubbardModel m;
    SpinSector sector;
  };
  const std::vector<Case> cases{
      {model(3, 3, 0.0), one3},
      {model(3, 3, 1.0, {0.5}), one3},
      {model(3, 3, 5.0), one3},
      {model(3, 5, 3.0, {0.5}), one3},
      {model(2, 4, 2.0, {1.0}), SpinSector{{2, 2}}},
      {model(4, 4, 5.0), SpinSector::one_per_colour(4)},
  };
  const std::vector<double> grid = default_flux_grid(21);
  const int n = static_cast<int>(grid.size());
  const double h = 1e-4;
  double worst = 0.0, worst_zero = 0.0;
  int checked = 0, skipped = 0;
  for (const Case& c : cases) {
    const std::vector<bool> crossing = detect_level_crossings(c.m, c.sector, grid);
    const SectorBasis basis = enumerate_sector_basis(c.m.L, c.sector);
    auto energy = [&](double phi) { return ground_state(build_fermionic_hamiltonian(c.m.with_phi(phi), basis)).energy; };
    for (int k = 0; k < n; ++k) {
      bool near = false;
      for (int j = 0; j < n; ++j)
        if (crossing[j])
          for (int d = -1; d <= 2; ++d) near |= (j + d + n) % n == k;
      const double I = persistent_current_ed(c.m.with_phi(grid[k]), c.sector).current;
      if (k == 0) worst_zero = std::max(worst_zero, std::abs(I));
      if (near) {
        ++skipped;
        continue;
      }
      const double fd = -(energy(grid[k] + h) - energy(grid[k] - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(I - fd));
      ++checked;
    }
  }
  return {worst <= 1e-5 && worst_zero <= 1e-8 && checked > 0,
          fmt("%d points checked (%d near crossings skipped), max |I + dE/dphi| = %.2e (bound 1e-5), max |I(0)| = %.2e "
              "(bound 1e-8)",
              checked, skipped, worst, worst_zero)};
}

Outcome phase_signatures() {
  const std::vector<double> grid = default_flux_grid(21);
  auto steps = [&](const HubbardModel& m) {
    std::vector<double> d;
    double prev = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double I = persistent_current_ed(m.with_phi(grid[k]), SpinSector::one_per_colour(3)).current;
      if (k > 0) d.push_back(std::abs(I - prev));
      prev = I;
    }
    return d;
  };
  auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  const std::vector<double> free = steps(model(3, 3, 0.0)), mott = steps(model(3, 3, 5.0));
  const double r_free = *std::max_element(free.begin(), free.end()) / median(free);
  const double r_mott = *std::max_element(mott.begin(), mott.end()) / median(mott);
  return {r_free > 5.0 && r_mott <= 2.0,
          fmt("U=0: max/median step = %.2f (must exceed 5); U=5: %.2f (bound 2)", r_free, r_mott)};
}

Outcome complexity() {
  int mismatches = 0, checked = 0;
  for (int N = 1; N <= 5; ++N)
    for (int L = 2; L <= 6; ++L)
      for (int layers = 1; layers <= 3; ++layers) {
        const SpinSector sector = SpinSector::one_per_colour(N);
        const ComplexityReport r = complexity_report(N, L, layers, N);
        const CircuitCounts all = count_gates(build_ansatz({L, sector, layers, default_occupation(L, sector)}));
        const CircuitCounts one = count_gates(build_ansatz({L, sector, 1, default_occupation(L, sector)}));
        const bool ok = one.cnot == r.cnot_per_layer && one.cnot_depth == r.depth_per_layer &&
                        one.parameters - N == r.params_per_layer && all.cnot == r.cnot_total &&
                        all.parameters == r.parameter_total && r.cnot_per_layer == 5 * N * L - 3 * N - 2 * L &&
                        r.depth_per_layer == 2 * N + 3 * L - 5 && r.params_per_layer == 3 * N * L - N - L &&
                        all.cnot_depth <= layers * r.depth_per_layer;
        mismatches += !ok;
        ++checked;
      }
  const CircuitCounts fig1 = count_gates(build_ansatz({3, SpinSector::one_per_colour(3), 1, default_occupation(3, SpinSector::one_per_colour(3))}));
  const bool fig1_ok = fig1.parameters == 24 && fig1.cnot == 30 && fig1.cnot_depth == 10;
  return {mismatches == 0 && fig1_ok,
          fmt("%d (N, L, layers) instances, %d mismatches; SU(3) L=3 single layer: %d parameters, %d CNOTs, depth %d", checked,
              mismatches, fig1.parameters, fig1.cnot, fig1.cnot_depth)};
}

PauliHamiltonian bond_operator(const PauliHamiltonian& H, const BondObservable& b) {
  PauliHamiltonian op(H.qubits());
  for (std::size_t i : b.terms) op.add(H.terms()[i].coeff, H.terms()[i].string);
  return op;
}

Outcome measurement_grouping() {
  struct Case {
    HubbardModel m;
    SpinSector sector;
  };
  std::vector<Case> cases;
  for (int N = 1; N <= 4; ++N)
    for (int L = 3; N * L <= 12; ++L) {
      cases.push_back({model(N, L, 2.0, {0.5}), SpinSector::one_per_colour(N)});
      if (N >= 2) {
        std::vector<int> counts(N, 1);
        counts[0] = 2;
        cases.push_back({model(N, L, 1.0), SpinSector{counts}});
      }
    }
  int wrong_count = 0, noncommuting = 0, commutator_checks = 0;
  double worst_analytic = 0.0;
  Rng rng(77);
  for (Case& c : cases) {
    c.m.phi = rng.uniform();
    const PauliHamiltonian H = build_qubit_hamiltonian(c.m, c.sector);
    const std::vector<MeasurementGroup> groups = group_terms(H, c.m, c.sector);
    bool all_odd = true;
    for (int n : c.sector.counts) all_odd &= n % 2 == 1;
    const std::size_t expected = all_odd && c.m.L % 2 == 0 ? 3 : 4;
    wrong_count += groups.size() != expected;

    const int q = H.qubits();
    std::vector<cplx> psi(std::size_t{1} << q);
    for (cplx& a : psi) a = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    for (const MeasurementGroup& g : groups) {
      std::vector<PauliHamiltonian> ops;
      if (g.bonds.empty())
        for (std::size_t i : g.terms) {
          PauliHamiltonian op(q);
          op.add(H.terms()[i].coeff, H.terms()[i].string);
          ops.push_back(op);
        }
      else
        for (const BondObservable& b : g.bonds) ops.push_back(bond_operator(H, b));
      for (std::size_t a = 0; a < ops.size(); ++a)
        for (std::size_t b = a + 1; b < ops.size(); ++b) {
          const std::vector<cplx> ab = sunvqe::apply(ops[a], sunvqe::apply(ops[b], psi));
          const std::vector<cplx> ba = sunvqe::apply(ops[b], sunvqe::apply(ops[a], psi));
          double defect = 0.0, scale = 0.0;
          for (std::size_t k = 0; k < psi.size(); ++k) {
            defect = std::max(defect, std::abs(ab[k] - ba[k]));
            scale = std::max(scale, std::abs(ab[k]));
          }
          noncommuting += defect > 1e-10 * std::max(1.0, scale);
          ++commutator_checks;
        }
    }

    const GroupedEstimator est(H, groups);
    const VqeProblem p(c.m, c.sector, 2);
    for (int draw = 0; draw < 3; ++draw) {
      const Statevector s = p.state(random_parameters(p.parameter_count(), rng));
      worst_analytic = std::max(worst_analytic, std::abs(est.analytic(s) - expectation(s.amplitudes(), H)));
    }
  }
  return {wrong_count == 0 && noncommuting == 0 && worst_analytic <= 1e-10,
          fmt("%zu models: %d wrong group counts; %d dense commutator checks, %d failures; max |analytic - exact| = "
              "%.2e (bound 1e-10)",
              cases.size(), wrong_count, commutator_checks, noncommuting, worst_analytic)};
}

Outcome shot_noise_law(const SweepResult& optimal) {
  const HubbardModel m = model(3, 3, 5.0);
  const SpinSector sector = SpinSector::one_per_colour(3);
  const std::vector<std::int64_t> shots{8192, 16384, 32768};
  const int seeds = 50;
  std::vector<double> pooled_var(shots.size(), 0.0);
  int covered = 0, cells = 0;
  for (const SweepRecord& rec : optimal.records) {
    const VqeProblem p(m.with_phi(rec.phi), sector, optimal.layers);
    const Statevector s = p.state(rec.params);
    const double exact = p.energy(rec.params);
    for (std::size_t i = 0; i < shots.size(); ++i) {
      std::vector<double> means;
      for (int seed = 1; seed <= seeds; ++seed) {
        const ShotEstimate e = p.sampled_energy(rec.params, shots[i], 1000 * seed + i);
        means.push_back(e.mean);
        if (shots[i] == 32768) {
          covered += std::abs(e.mean - exact) <= 3.0 * e.stderr;
          ++cells;
        }
      }
      double mu = 0.0, var = 0.0;
      for (double x : means) mu += x / seeds;
      for (double x : means) var += (x - mu) * (x - mu) / (seeds - 1);
      pooled_var[i] += var;
    }
  }
  const double r1 = std::sqrt(pooled_var[0] / pooled_var[1]), r2 = std::sqrt(pooled_var[0] / pooled_var[2]);
  const bool law = std::abs(r1 / std::sqrt(2.0) - 1.0) <= 0.2 && std::abs(r2 / 2.0 - 1.0) <= 0.2;
  const double coverage = static_cast<double>(covered) / cells;
  return {law && coverage >= 0.95,
          fmt("spread ratio 8192/16384 = %.3f (expect %.3f +-20%%), 8192/32768 = %.3f (expect 2 +-20%%); "
              "32768-shot 3-sigma coverage %.1f%% of %d cells (need >= 95%%)",
              r1, std::sqrt(2.0), r2, 100.0 * coverage, cells)};
}

Outcome entanglement_buildup() {
  const HubbardModel m = model(3, 3, 1.0, {0.5});
  const SpinSector sector = SpinSector::one_per_colour(3);
  const SectorBasis basis = enumerate_sector_basis(3, sector);
  const GroundState gs = ground_state(build_fermionic_hamiltonian(m.with_phi(0.5), basis));
  const std::vector<int> cut = half_chain(9);
  const std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.45, 0.5};
  double best_entropy[4] = {}, golden = 0.0;
  for (int layers = 1; layers <= 3; ++layers) {
    double best_energy = 1e300;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      VqeConfig cfg;
      cfg.layers = layers;
      cfg.seed = seed;
      cfg.starts = 1;
      const SweepRecord rec = sweep_flux(m, sector, grid, cfg).records.back();
      if (rec.energy_vqe >= best_energy) continue;
      best_energy = rec.energy_vqe;
      best_entropy[layers] = rec.entropy_vqe;
      if (layers == 3) {
        const Statevector s = VqeProblem(m.with_phi(0.5), sector, layers).state(rec.params);
        DenseVector v(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) v[k] = s[basis.word(k)];
        DenseVector projected = gs.ground_space * (gs.ground_space.adjoint() * v);
        projected.normalize();
        golden = entanglement_entropy_ed(projected, basis, cut);
      }
    }
  }
  const double gap = std::abs(best_entropy[3] - golden);
  const bool monotone = best_entropy[1] <= best_entropy[2] && best_entropy[2] <= best_entropy[3];
  return {gap <= 0.05 && monotone,
          fmt("best-seed S: 1 layer %.4f, 2 layers %.4f, 3 layers %.4f (non-decreasing required); ED golden %.4f, "
              "|dS| = %.2e (bound 0.05)",
              best_entropy[1], best_entropy[2], best_entropy[3], golden, gap)};
}

Outcome nft_sampled(const SweepResult& statevector) {
  const HubbardModel m = model(3, 3, 5.0);
  const SpinSector sector = SpinSector::one_per_colour(3);
  const std::vector<double> grid{0.0, 0.25, 0.5};
  VqeConfig cfg;
  cfg.layers = 3;
  cfg.optimizer = OptimizerKind::kNft;
  cfg.mode = CostMode::kSampled;
  cfg.shots = 32768;
  cfg.starts = 1;
  cfg.double_budget_at_half = false;
  cfg.max_evaluations = 65536;
  const double small = max_relative_deviation(sweep_flux(m, sector, grid, cfg));
  cfg.max_evaluations = 1048576;
  const double large = max_relative_deviation(sweep_flux(m, sector, grid, cfg));
  double exact = 0.0;
  for (const SweepRecord& rec : statevector.records)
    for (double phi : grid)
      if (std::abs(rec.phi - phi) < 1e-12)
        exact = std::max(exact, std::abs(rec.energy_vqe - rec.energy_ed) / std::abs(rec.energy_ed));
  return {small > exact && large < small && large <= 0.25,
          fmt("max rel. dev: statevector %.2e, NFT 65536 evals %.2e, NFT 1048576 evals %.2e (ordering required, "
              "bound 0.25; reference band 3%%-19%%)",
              exact, small, large)};
}

Outcome number_conservation() {
  struct Bench {
    int N, L, layers;
  };
  const std::vector<Bench> benches{{3, 3, 1}, {3, 3, 2}, {3, 3, 3}, {3, 5, 3}, {2, 4, 3}, {4, 4, 5}};
  long violations = 0, draws = 0;
  Rng rng(10);
  for (const Bench& b : benches) {
    const SpinSector sector = SpinSector::one_per_colour(b.N);
    const Circuit c = build_ansatz({b.L, sector, b.layers, default_occupation(b.L, sector)});
    for (int d = 0; d < 100; ++d, ++draws) {
      const std::vector<double> theta = random_parameters(c.parameter_count(), rng);
      const Statevector s = run(c, theta, 0);
      for (std::uint64_t w = 0; w < s.dimension(); ++w)
        if (std::norm(s[w]) > 1e-24 && !hamming_check(w, b.L, sector)) {
          ++violations;
          break;
        }
    }
  }
  return {violations == 0, fmt("%ld draws over %zu ansatze, %ld with support outside the sector", draws,
                               benches.size(), violations)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto wanted = [&](int k) { return only.empty() || only.count(k); };

  // criteria 7 and 9 reuse the 3-layer statevector sweep of criterion 2
  SweepResult statevector;
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, jw_exactness},
      {2, [&] { return fig2b_reproduction(statevector); }},
      {3, current_consistency},
      {4, phase_signatures},
      {5, complexity},
      {6, measurement_grouping},
      {7, [&] { return shot_noise_law(statevector); }},
      {8, entanglement_buildup},
      {9, [&] { return nft_sampled(statevector); }},
      {10, number_conservation},
  };
  int failures = 0;
  for (const auto& [k, run] : criteria) {
    if (!wanted(k)) continue;
    if ((k == 7 || k == 9) && statevector.records.empty()) {
      SweepResult tmp;
      fig2b_reproduction(tmp);
      statevector = std::move(tmp);
    }
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("CRITERION %d: %s - %s [%.1f s]\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
