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
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace sunvqe {

/// Seedable, splittable random stream. Children derived with split() depend
/// only on the parent seed and the label, never on how much the parent was used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  Rng split(std::string_view label) const;
  Rng split(std::uint64_t stream) const;

  std::mt19937_64& engine() { return engine_; }
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Counts of `shots` i.i.d. draws from `probabilities` (which need not be
/// exactly normalised), via sequential conditional binomials.
std::vector<std::int64_t> sample_multinomial(std::span<const double> probabilities, std::int64_t shots, Rng& rng);

}  // namespace sunvqe
