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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sunvqe/ansatz.hpp"
#include "sunvqe/circuit_sim.hpp"
#include "sunvqe/lattice_model.hpp"
#include "sunvqe/measurement.hpp"
#include "sunvqe/optimizers.hpp"
#include "sunvqe/pauli.hpp"
#include "sunvqe/sparse_matrix.hpp"

namespace sunvqe {

enum class OptimizerKind { kQuasiNewton, kNft };
enum class CostMode { kExact, kSampled };
enum class GradientMethod { kAdjoint, kFiniteDifference };

struct VqeConfig {
  int layers = 3;
  OptimizerKind optimizer = OptimizerKind::kQuasiNewton;
  CostMode mode = CostMode::kExact;
  std::int64_t shots = 32768;  // per measurement group, SAMPLED mode
  double tolerance = 1e-5;     // gradient norm, quasi-Newton
  std::int64_t max_evaluations = 200000;
  std::uint64_t seed = 1;
  int starts = 5;              // random starts at the first grid point
  GradientMethod gradient = GradientMethod::kAdjoint;
  double fd_step = 1e-7;
  NftFit nft_fit = NftFit::kAuto;
  bool mirror = false;          // copy points phi > 1/2 from 1 - phi
  bool double_budget_at_half = true;
  int threads = 1;
};

/// Throws RangeError naming the offending field.
void validate(const VqeConfig& config);

std::string to_string(OptimizerKind kind);
std::string to_string(CostMode mode);
std::string to_string(GradientMethod method);
std::string to_string(NftFit fit);
OptimizerKind parse_optimizer(const std::string& s);
CostMode parse_cost_mode(const std::string& s);
GradientMethod parse_gradient(const std::string& s);
NftFit parse_nft_fit(const std::string& s);

struct Observables {
  double energy = 0.0;
  double current = 0.0;
  double entropy = 0.0;  // nats
};

/// Everything needed to evaluate the ansatz at one flux value. Immutable after
/// construction, so const members may be called from several threads.
class VqeProblem {
 public:
  /// An empty `entropy_cut` means the first floor(NL/2) qubits; occupation 0
  /// means the default preparation.
  VqeProblem(const HubbardModel& model, const SpinSector& sector, int layers, std::vector<int> entropy_cut = {},
             std::uint64_t occupation = 0);

  const HubbardModel& model() const { return model_; }
  const SpinSector& sector() const { return sector_; }
  const Circuit& circuit() const { return circuit_; }
  int parameter_count() const { return circuit_.parameter_count(); }
  const PauliHamiltonian& hamiltonian() const { return hamiltonian_; }
  const PauliHamiltonian& current_operator() const { return current_; }
  const std::vector<int>& entropy_cut() const { return cut_; }

  Statevector state(std::span<const double> params) const;
  double energy(std::span<const double> params) const;
  double energy_and_gradient(std::span<const double> params, std::span<double> gradient) const;
  /// Requires a nearest-neighbour model (grouped measurement).
  ShotEstimate sampled_energy(std::span<const double> params, std::int64_t shots, std::uint64_t seed) const;
  Observables observables(std::span<const double> params) const;
  /// Per-slot frequency content of the cost (RZ: one harmonic of frequency 2;
  /// ISWAP_LIKE and CRZ: frequencies 1 and 2).
  std::vector<CoordinateSpectrum> spectra() const;

 private:
  HubbardModel model_;
  SpinSector sector_;
  Circuit circuit_;
  PauliHamiltonian hamiltonian_;
  PauliHamiltonian current_;
  SparseHermitian matrix_;
  std::vector<int> cut_;
  std::optional<GroupedEstimator> estimator_;
};

/// EXACT: <psi|H|psi>. SAMPLED: grouped shot estimate with `shots` per group.
double cost(const VqeProblem& problem, std::span<const double> params, CostMode mode, std::int64_t shots = 1,
            std::uint64_t seed = 0);

struct PointResult {
  std::vector<double> params;
  double energy = 0.0;     // exact energy at params
  double objective = 0.0;  // optimizer's final cost value (a shot estimate in SAMPLED mode)
  std::int64_t evaluations = 0;
  bool converged = false;
};

/// BFGS on the exact energy; throws std::invalid_argument in SAMPLED mode.
PointResult optimize_quasi_newton(const VqeProblem& problem, std::vector<double> theta0, const VqeConfig& config,
                                  std::int64_t budget);
/// Sequential NFT; in SAMPLED mode evaluation k draws its shots from stream(k).
/// Reports converged = true since it only has budget semantics.
PointResult optimize_nft(const VqeProblem& problem, std::vector<double> theta0, const VqeConfig& config,
                         std::int64_t budget, std::uint64_t stream);

/// Uniform on [0, 2 pi).
std::vector<double> random_parameters(int count, Rng& rng);

/// Observables of an arbitrary normalized state.
Observables observables_from_state(const Statevector& state, const HubbardModel& model, const SpinSector& sector,
                                   std::span<const int> entropy_cut);

/// Parameters preparing the time-reversed, gauge-shifted state, which is the
/// ansatz image of the optimum at 1 - phi when `params` is optimal at phi.
std::vector<double> mirror_parameters(const VqeProblem& problem, std::span<const double> params);

struct SweepRecord {
  double phi = 0.0;
  std::vector<double> params;
  double energy_vqe = 0.0, energy_ed = 0.0;
  double current_vqe = 0.0, current_ed = 0.0;
  double entropy_vqe = 0.0, entropy_ed = 0.0;
  double objective = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
  bool mirrored = false;
  bool ed_degenerate = false;
};

struct SweepResult {
  int layers = 0;
  std::uint64_t seed = 0;
  std::vector<SweepRecord> records;
  bool all_converged() const;
};

/// phi_k = k / points, k = 0..points-1.
std::vector<double> default_flux_grid(int points = 21);

using SweepProgress = std::function<void(const SweepRecord&)>;

/// Adiabatically assisted sweep: the first point uses `starts` random
/// initializations, every later point warm-starts from the previous optimum.
SweepResult sweep_flux(const HubbardModel& model, const SpinSector& sector, std::span<const double> grid,
                       const VqeConfig& config, std::span<const int> entropy_cut = {}, std::uint64_t occupation = 0,
                       const SweepProgress& progress = nullptr);

}  // namespace sunvqe
