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

#include "sunvqe/vqe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "sunvqe/fermion_ed.hpp"
#include "sunvqe/jw.hpp"

namespace sunvqe {

void validate(const VqeConfig& c) {
  if (c.layers < 0) throw RangeError("vqe.layers: must be >= 0");
  if (!(c.tolerance > 0.0)) throw RangeError("vqe.tolerance: must be > 0");
  if (c.max_evaluations < 1) throw RangeError("vqe.max_evaluations: must be >= 1");
  if (c.mode == CostMode::kSampled && c.shots < 1) throw RangeError("vqe.shots: must be >= 1 in sampled mode");
  if (c.starts < 1) throw RangeError("vqe.starts: must be >= 1");
  if (!(c.fd_step > 0.0)) throw RangeError("vqe.fd_step: must be > 0");
  if (c.threads < 1) throw RangeError("vqe.threads: must be >= 1");
  if (c.optimizer == OptimizerKind::kQuasiNewton && c.mode == CostMode::kSampled)
    throw RangeError("vqe.optimizer: quasi_newton requires exact mode");
}

std::string to_string(OptimizerKind kind) { return kind == OptimizerKind::kQuasiNewton ? "quasi_newton" : "nft"; }
std::string to_string(CostMode mode) { return mode == CostMode::kExact ? "exact" : "sampled"; }
std::string to_string(GradientMethod m) { return m == GradientMethod::kAdjoint ? "adjoint" : "finite_difference"; }
std::string to_string(NftFit fit) {
  switch (fit) {
    case NftFit::kSinusoid3: return "sinusoid3";
    case NftFit::kHarmonic5: return "harmonic5";
    case NftFit::kAuto: return "auto";
  }
  return "auto";
}

OptimizerKind parse_optimizer(const std::string& s) {
  if (s == "quasi_newton" || s == "bfgs") return OptimizerKind::kQuasiNewton;
  if (s == "nft") return OptimizerKind::kNft;
  throw RangeError("vqe.optimizer: expected quasi_newton or nft, got '" + s + "'");
}

CostMode parse_cost_mode(const std::string& s) {
  if (s == "exact") return CostMode::kExact;
  if (s == "sampled") return CostMode::kSampled;
  throw RangeError("vqe.mode: expected exact or sampled, got '" + s + "'");
}

GradientMethod parse_gradient(const std::string& s) {
  if (s == "adjoint") return GradientMethod::kAdjoint;
  if (s == "finite_difference") return GradientMethod::kFiniteDifference;
  throw RangeError("vqe.gradient: expected adjoint or finite_difference, got '" + s + "'");
}

NftFit parse_nft_fit(const std::string& s) {
  if (s == "sinusoid3") return NftFit::kSinusoid3;
  if (s == "harmonic5") return NftFit::kHarmonic5;
  if (s == "auto") return NftFit::kAuto;
  throw RangeError("vqe.nft_fit: expected sinusoid3, harmonic5 or auto, got '" + s + "'");
}

VqeProblem::VqeProblem(const HubbardModel& model, const SpinSector& sector, int layers, std::vector<int> entropy_cut,
                       std::uint64_t occupation)
    : model_(model), sector_(sector), cut_(std::move(entropy_cut)) {
  validate(model_, sector_);
  AnsatzSpec spec = make_ansatz_spec(model_, sector_, layers);
  if (occupation != 0) spec.occupation = occupation;
  circuit_ = build_ansatz(spec);
  hamiltonian_ = build_qubit_hamiltonian(model_, sector_);
  current_ = build_current_operator(model_, sector_);
  matrix_ = to_dense(hamiltonian_, 20);
  if (cut_.empty()) cut_ = half_chain(model_.qubits());
  if (model_.nearest_neighbour()) estimator_.emplace(hamiltonian_, group_terms(hamiltonian_, model_, sector_));
}

Statevector VqeProblem::state(std::span<const double> params) const { return run(circuit_, params, 0); }

double VqeProblem::energy(std::span<const double> params) const {
  const Statevector psi = state(params);
  double e = 0.0;
  for (const Triplet& t : matrix_.entries()) e += (std::conj(psi[t.row]) * t.value * psi[t.col]).real();
  return e;
}

double VqeProblem::energy_and_gradient(std::span<const double> params, std::span<double> gradient) const {
  return sunvqe::energy_and_gradient(circuit_, params, 0, matrix_, gradient);
}

ShotEstimate VqeProblem::sampled_energy(std::span<const double> params, std::int64_t shots,
                                        std::uint64_t seed) const {
  if (!estimator_) throw std::invalid_argument("sampled mode requires a nearest-neighbour model");
  return estimator_->estimate(state(params), shots, seed);
}

Observables VqeProblem::observables(std::span<const double> params) const {
  const Statevector psi = state(params);
  return {energy(params), expectation(psi.amplitudes(), current_), reduced_entropy(psi, cut_)};
}

std::vector<CoordinateSpectrum> VqeProblem::spectra() const {
  std::vector<CoordinateSpectrum> out(static_cast<std::size_t>(circuit_.parameter_count()));
  for (const Gate& g : circuit_.gates()) {
    if (g.slot < 0) continue;
    out[g.slot] = g.kind == GateKind::kRZ ? CoordinateSpectrum{2.0, 1} : CoordinateSpectrum{1.0, 2};
  }
  return out;
}

double cost(const VqeProblem& problem, std::span<const double> params, CostMode mode, std::int64_t shots,
            std::uint64_t seed) {
  if (mode == CostMode::kExact) return problem.energy(params);
  return problem.sampled_energy(params, shots, seed).mean;
}

PointResult optimize_quasi_newton(const VqeProblem& problem, std::vector<double> theta0, const VqeConfig& config,
                                  std::int64_t budget) {
  if (config.mode != CostMode::kExact) throw std::invalid_argument("quasi-Newton optimization needs exact mode");
  const CostFunction f = [&](std::span<const double> x) { return problem.energy(x); };
  GradientFunction g = nullptr;
  if (config.gradient == GradientMethod::kAdjoint)
    g = [&](std::span<const double> x, std::span<double> grad) { return problem.energy_and_gradient(x, grad); };
  const OptimizeResult r = minimize_bfgs(f, std::move(theta0), {config.tolerance, budget, config.fd_step}, g);
  PointResult out;
  out.params = r.x;
  out.energy = problem.energy(r.x);
  out.objective = r.value;
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  return out;
}

PointResult optimize_nft(const VqeProblem& problem, std::vector<double> theta0, const VqeConfig& config,
                         std::int64_t budget, std::uint64_t stream) {
  const Rng master(stream);
  std::uint64_t counter = 0;
  const CostFunction f = [&](std::span<const double> x) {
    if (config.mode == CostMode::kExact) return problem.energy(x);
    return problem.sampled_energy(x, config.shots, master.split(counter++).seed()).mean;
  };
  const OptimizeResult r = minimize_nft(f, std::move(theta0), problem.spectra(), {budget, config.nft_fit});
  PointResult out;
  out.params = r.x;
  out.energy = problem.energy(r.x);
  out.objective = r.value;
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  return out;
}

std::vector<double> random_parameters(int count, Rng& rng) {
  std::vector<double> p(static_cast<std::size_t>(count));
  for (double& x : p) x = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return p;
}

Observables observables_from_state(const Statevector& state, const HubbardModel& model, const SpinSector& sector,
                                   std::span<const int> entropy_cut) {
  const PauliHamiltonian H = build_qubit_hamiltonian(model, sector);
  const PauliHamiltonian I = build_current_operator(model, sector);
  const std::vector<int> cut = entropy_cut.empty() ? half_chain(state.qubits())
                                                   : std::vector<int>(entropy_cut.begin(), entropy_cut.end());
  return {expectation(state.amplitudes(), H), expectation(state.amplitudes(), I), reduced_entropy(state, cut)};
}

std::vector<double> mirror_parameters(const VqeProblem& problem, std::span<const double> params) {
  const Circuit& c = problem.circuit();
  if (static_cast<int>(params.size()) != c.parameter_count())
    throw std::invalid_argument("mirror_parameters: parameter count mismatch");
  // conj(U(theta)) = U(-theta) for every gate; then exp(-i 2 pi/L sum_j j n_j)
  // moves the flux by one quantum, applied through the last RZ on each qubit.
  std::vector<double> out(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) out[k] = -params[k];
  const int L = problem.model().L;
  std::vector<int> last_rz(static_cast<std::size_t>(c.qubits()), -1);
  for (const Gate& g : c.gates())
    if (g.kind == GateKind::kRZ) last_rz[g.q0] = g.slot;
  const double gamma = 2.0 * std::numbers::pi / L;
  for (int q = 0; q < c.qubits(); ++q) {
    if (last_rz[q] < 0) continue;  // never excited: n_q = 0
    out[last_rz[q]] -= 0.5 * gamma * (q % L);
  }
  return out;
}

bool SweepResult::all_converged() const {
  return std::all_of(records.begin(), records.end(), [](const SweepRecord& r) { return r.converged; });
}

std::vector<double> default_flux_grid(int points) {
  if (points < 1) throw RangeError("sweep.points: must be >= 1");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) grid[k] = static_cast<double>(k) / points;
  return grid;
}

namespace {

PointResult optimize_point(const VqeProblem& problem, std::vector<double> theta0, const VqeConfig& config,
                           std::int64_t budget, std::uint64_t stream) {
  if (config.optimizer == OptimizerKind::kQuasiNewton)
    return optimize_quasi_newton(problem, std::move(theta0), config, budget);
  return optimize_nft(problem, std::move(theta0), config, budget, stream);
}

template <typename F>
void parallel_for(int count, int threads, F&& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int k; (k = next++) < count;) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

SweepResult sweep_flux(const HubbardModel& model, const SpinSector& sector, std::span<const double> grid,
                       const VqeConfig& config, std::span<const int> entropy_cut, std::uint64_t occupation,
                       const SweepProgress& progress) {
  validate(config);
  validate(model, sector);
  if (grid.empty()) throw RangeError("sweep.phi: grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0 && grid[k] < 1.0)) throw RangeError("sweep.phi: values must lie in [0, 1)");
    if (k > 0 && !(grid[k] > grid[k - 1])) throw RangeError("sweep.phi: grid must be strictly increasing");
  }
  const std::vector<int> cut(entropy_cut.begin(), entropy_cut.end());
  const Rng master(config.seed);

  SweepResult result;
  result.layers = config.layers;
  result.seed = config.seed;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double phi = grid[k];
    const HubbardModel m = model.with_phi(phi);
    const VqeProblem problem(m, sector, config.layers, cut, occupation);
    const EdPoint ed = solve_ed_point(m, sector, problem.entropy_cut());

    SweepRecord rec;
    rec.phi = phi;
    rec.energy_ed = ed.energy;
    rec.current_ed = ed.current;
    rec.entropy_ed = ed.entropy;
    rec.ed_degenerate = ed.degenerate;

    const SweepRecord* source = nullptr;
    if (config.mirror && phi > 0.5 + 1e-12)
      for (const auto& r : result.records)
        if (!r.mirrored && std::abs(r.phi - (1.0 - phi)) < 1e-9) source = &r;

    if (source) {
      rec.params = mirror_parameters(problem, source->params);
      rec.energy_vqe = source->energy_vqe;
      rec.current_vqe = -source->current_vqe;
      rec.entropy_vqe = source->entropy_vqe;
      rec.objective = source->objective;
      rec.converged = source->converged;
      rec.mirrored = true;
    } else {
      const bool at_half = std::abs(phi - 0.5) < 1e-12;
      const std::int64_t budget = config.max_evaluations * (at_half && config.double_budget_at_half ? 2 : 1);
      const Rng point_rng = master.split("point").split(static_cast<std::uint64_t>(k));
      PointResult best;
      if (k == 0) {
        std::vector<PointResult> runs(static_cast<std::size_t>(config.starts));
        parallel_for(config.starts, config.threads, [&](int s) {
          Rng init = master.split("init").split(static_cast<std::uint64_t>(s));
          runs[s] = optimize_point(problem, random_parameters(problem.parameter_count(), init), config, budget,
                                   point_rng.split(static_cast<std::uint64_t>(s)).seed());
        });
        std::size_t arg = 0;
        for (std::size_t s = 1; s < runs.size(); ++s)
          if (runs[s].objective < runs[arg].objective) arg = s;
        best = runs[arg];
        best.evaluations = 0;
        for (const auto& r : runs) best.evaluations += r.evaluations;
      } else {
        best = optimize_point(problem, result.records.back().params, config, budget, point_rng.seed());
      }
      const Observables obs = problem.observables(best.params);
      rec.params = std::move(best.params);
      rec.energy_vqe = obs.energy;
      rec.current_vqe = obs.current;
      rec.entropy_vqe = obs.entropy;
      rec.objective = best.objective;
      rec.evaluations = best.evaluations;
      rec.converged = best.converged;
    }
    result.records.push_back(std::move(rec));
    if (progress) progress(result.records.back());
  }
  return result;
}

}  // namespace sunvqe
