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

#include "sunvqe/rng.hpp"

#include <algorithm>
#include <numeric>

namespace sunvqe {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(splitmix64(seed)), static_cast<std::uint32_t>(splitmix64(seed) >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(make_engine(seed)) {}

Rng Rng::split(std::string_view label) const {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
  for (unsigned char c : label) h = (h ^ c) * 0x100000001B3ull;
  return Rng(splitmix64(seed_ ^ splitmix64(h)));
}

Rng Rng::split(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x5851F42D4C957F2Dull))); }

std::vector<std::int64_t> sample_multinomial(std::span<const double> probabilities, std::int64_t shots, Rng& rng) {
  std::vector<std::int64_t> counts(probabilities.size(), 0);
  double remaining_mass = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  std::int64_t remaining = shots;
  std::size_t last = probabilities.size();
  for (std::size_t k = probabilities.size(); k-- > 0;)
    if (probabilities[k] > 0.0) {
      last = k;
      break;
    }
  for (std::size_t k = 0; k < probabilities.size() && remaining > 0; ++k) {
    const double p = probabilities[k];
    if (p <= 0.0) continue;
    if (k == last || remaining_mass <= p) {
      counts[k] = remaining;
      remaining = 0;
      break;
    }
    const double q = std::clamp(p / remaining_mass, 0.0, 1.0);
    const std::int64_t x = std::binomial_distribution<std::int64_t>(remaining, q)(rng.engine());
    counts[k] = x;
    remaining -= x;
    remaining_mass -= p;
  }
  return counts;
}

}  // namespace sunvqe
