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
#include <span>
#include <vector>

namespace sunvqe {

using CostFunction = std::function<double(std::span<const double>)>;
/// Returns the value and writes the gradient.
using GradientFunction = std::function<double(std::span<const double>, std::span<double>)>;

struct OptimizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::int64_t evaluations = 0;
  std::int64_t iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
};

struct BfgsOptions {
  double gradient_tolerance = 1e-5;  // on the Euclidean norm
  std::int64_t max_evaluations = 200000;
  double fd_step = 1e-7;
};

/// BFGS with a strong-Wolfe line search. Without `gradient` the gradient is
/// taken by central differences, costing 2n evaluations; with it, each
/// gradient call counts as one evaluation. On budget exhaustion or a failed
/// line search the best point seen is returned with converged = false.
OptimizeResult minimize_bfgs(const CostFunction& f, std::vector<double> x0, const BfgsOptions& opts = {},
                             const GradientFunction& gradient = nullptr);

/// How the cost is modelled along one coordinate for the sequential (NFT) optimizer.
struct CoordinateSpectrum {
  double frequency = 1.0;  // base angular frequency
  int harmonics = 1;       // number of multiples of `frequency` present
};

enum class NftFit {
  kSinusoid3,  // a cos(w theta - b) + c from three points, for every slot
  kHarmonic5,  // two harmonics of frequency 1 from five points, for every slot
  kAuto,       // each slot's own spectrum: three points for one harmonic, five for two
};

struct NftOptions {
  std::int64_t max_evaluations = 65536;
  NftFit fit = NftFit::kAuto;
};

/// Sequential minimal optimization: visits the coordinates cyclically, samples
/// the cost at 2K+1 equally spaced angles over one period, fits a K-harmonic
/// trigonometric polynomial and jumps to its minimizer. Stops when the next
/// visit would exceed the evaluation budget. The returned value is the fitted
/// minimum of the last visit (or the cost at x0 if no visit fits).
OptimizeResult minimize_nft(const CostFunction& f, std::vector<double> x0,
                            const std::vector<CoordinateSpectrum>& spectra, const NftOptions& opts = {});

}  // namespace sunvqe
